#include "cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "ndmm/engine.hpp"
#include "ndmm/io.hpp"
#include "ndmm/plot.hpp"
#include "ndmm/service.hpp"

namespace ndmm::cli {

namespace {

// Carries an exit code up to run().
struct Exit {
  int code;
};

struct ConfigFlags {
  std::optional<double> i_min;
  std::optional<double> i_max;
  std::optional<double> k;
};

void add_bounds(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--i-min", flags.i_min, "Lower bound substituted for I");
  cmd->add_option("--i-max", flags.i_max, "Upper bound substituted for I");
}

std::string read_input(const std::string& path, std::ostream& err) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    err << "ndmm: " << path << ": no such file\n";
    throw Exit{kExitNoInput};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "ndmm: " << path << ": cannot read: " << std::strerror(errno) << "\n";
    throw Exit{kExitNoInput};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report_document_error(const std::string& path, const DocumentError& e, std::ostream& err) {
  if (e.diagnostics().empty()) {
    err << path << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
    return;
  }
  for (const auto& d : e.diagnostics()) err << path << ": " << d.to_string() << "\n";
}

ProblemDocument load(const std::string& path, std::ostream& err) {
  const std::string text = read_input(path, err);
  try {
    auto parsed = parse_problem(text);
    for (const auto& w : parsed.warnings) err << path << ": warning: " << w << "\n";
    return std::move(parsed.document);
  } catch (const DocumentError& e) {
    report_document_error(path, e, err);
    throw Exit{kExitFailure};
  }
}

EvaluationConfig resolve(const ProblemDocument& doc, const ConfigFlags& flags, std::ostream& err) {
  EvaluationConfig cfg = doc.defaults.value_or(EvaluationConfig{});
  if (flags.i_min) cfg.i_min = *flags.i_min;
  if (flags.i_max) cfg.i_max = *flags.i_max;
  if (flags.k) cfg.k = *flags.k;
  try {
    check_config(cfg);
  } catch (const ConfigError& e) {
    err << "ndmm: " << e.what() << "\n";
    throw Exit{kExitUsage};
  }
  return cfg;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto doc = load(path, err);
  out << path << ": ok (" << doc.problem.criterion_count() << " criteria, " << doc.problem.alternative_count()
      << " alternatives)\n";
  return kExitOk;
}

void print_text(const DecisionProblem& p, const EvaluationResult& r, std::ostream& out) {
  const auto id = [&](std::size_t j) -> const std::string& { return p.alternatives[j].id; };
  out << "config: iMin=" << format_number(r.config.i_min) << " iMax=" << format_number(r.config.i_max)
      << " k=" << format_number(r.config.k) << "\n";
  for (std::size_t j = 0; j < r.neutro_scores.size(); ++j) {
    out << id(j) << ": " << format_rating(r.neutro_scores[j]) << " [" << format_number(r.intervals[j].lo) << ","
        << format_number(r.intervals[j].hi) << "]\n";
  }
  out << "ranking:";
  for (auto j : r.ranking) out << " " << id(j);
  out << "\n";
  for (const auto& c : r.contentions) {
    out << "contention: " << id(c.crisp_index) << " within " << id(c.interval_index)
        << " threshold=" << format_number(c.threshold) << " kCritical=" << format_number(c.k_critical)
        << " kAdmissible=" << format_number(c.k_admissible) << "\n";
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  out << "selected: " << id(r.selected_index) << "\n";
}

int cmd_evaluate(const std::string& path, const ConfigFlags& flags, const std::string& format, std::ostream& out,
                 std::ostream& err) {
  const auto doc = load(path, err);
  const auto cfg = resolve(doc, flags, err);
  const auto result = evaluate(doc.problem, cfg);
  if (format == "json") {
    out << evaluation_to_json(doc.problem, result);
  } else {
    if (!doc.title.empty()) out << "title: " << doc.title << "\n";
    print_text(doc.problem, result, out);
  }
  return kExitOk;
}

int cmd_sensitivity(const std::string& path, const ConfigFlags& flags, const std::string& format,
                    std::ostream& out, std::ostream& err) {
  const auto doc = load(path, err);
  const auto cfg = resolve(doc, flags, err);
  const auto segments = k_sensitivity(doc.problem, cfg.i_min, cfg.i_max);
  if (format == "json") {
    out << sensitivity_to_json(doc.problem, segments);
    return kExitOk;
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (s) out << "; ";
    out << describe_segment(segments[s]) << ": " << doc.problem.alternatives[segments[s].selected_index].id;
  }
  out << "\n";
  return kExitOk;
}

int cmd_plot(const std::string& path, const ConfigFlags& flags, const std::string& out_path,
             const std::string& mode, std::ostream& out, std::ostream& err) {
  const auto doc = load(path, err);
  const auto cfg = resolve(doc, flags, err);
  const auto result = evaluate(doc.problem, cfg);
  PlotSpec spec;
  spec.mode = mode == "lines" ? PlotMode::kLines : PlotMode::kBands;
  const std::string svg = render_svg(doc.problem, result, spec);

  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (file) file << svg;
  if (!file) {
    err << "ndmm: " << out_path << ": cannot write: " << std::strerror(errno) << "\n";
    return kExitIoError;
  }
  out << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_serve(ServiceOptions options, std::ostream& out, std::ostream& err) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  const auto restore = [&] { pthread_sigmask(SIG_SETMASK, &previous, nullptr); };

  std::optional<Service> service;
  int port = 0;
  try {
    service.emplace(options);
    port = service->bind();
  } catch (const Error& e) {
    restore();
    err << "ndmm serve: " << e.what() << "\n";
    return kExitFailure;
  }
  for (const auto& w : service->store().load_warnings()) err << "ndmm serve: warning: " << w << "\n";
  out << "listening on http://" << options.host << ":" << port << std::endl;

  std::atomic<bool> signalled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    signalled = true;
    service->stop();
  });
  service->listen();
  if (!signalled) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  restore();
  out << "stopped\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neutrosophic decision matrix toolkit", "ndmm"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::string out_path;
  std::string mode = "bands";
  ConfigFlags flags;
  ServiceOptions serve_options;
  std::string data_dir;
  std::string web_root;

  auto* validate = app.add_subcommand("validate", "Check a problem file and report diagnostics");
  validate->add_option("file", file, "Problem file")->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score, de-neutrosophy and select");
  evaluate_cmd->add_option("file", file, "Problem file")->required();
  add_bounds(evaluate_cmd, flags);
  evaluate_cmd->add_option("--k", flags.k, "Risk parameter k >= 0");
  evaluate_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* sensitivity = app.add_subcommand("sensitivity", "Winner as a function of k");
  sensitivity->add_option("file", file, "Problem file")->required();
  add_bounds(sensitivity, flags);
  sensitivity->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* plot = app.add_subcommand("plot", "Write an SVG chart of the scores");
  plot->add_option("file", file, "Problem file")->required();
  plot->add_option("--out", out_path, "Output SVG path")->required();
  add_bounds(plot, flags);
  plot->add_option("--mode", mode, "bands: intervals per alternative; lines: score versus I")
      ->check(CLI::IsMember({"bands", "lines"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", serve_options.port, "TCP port; 0 picks a free one")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve->add_option("--host", serve_options.host, "Listen address")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Directory for persisted problems")->envname("NDMM_DATA_DIR");
  serve->add_option("--web-root", web_root, "Directory of static web UI assets")->envname("NDMM_WEB_ROOT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(file, out, err);
    if (*evaluate_cmd) return cmd_evaluate(file, flags, format, out, err);
    if (*sensitivity) return cmd_sensitivity(file, flags, format, out, err);
    if (*plot) return cmd_plot(file, flags, out_path, mode, out, err);
    if (*serve) {
      if (!data_dir.empty()) serve_options.data_dir = data_dir;
      if (!web_root.empty()) serve_options.web_root = web_root;
      return cmd_serve(std::move(serve_options), out, err);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "ndmm: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ndmm::cli
