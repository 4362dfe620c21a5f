#include "ndmm/service.hpp"

#include <charconv>
#include <cmath>

#include "httplib.h"
#include "json.hpp"
#include "ndmm/engine.hpp"
#include "ndmm/io.hpp"

namespace ndmm {

using nlohmann::ordered_json;

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kIdRoute = R"(/api/problems/([A-Za-z0-9_-]+))";

struct BadRequest {
  std::string message;
};

void send_json(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n", kJson);
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  ordered_json body;
  body["error"] = code;
  body["message"] = message;
  send_json(res, status, body);
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
  ordered_json out = ordered_json::array();
  for (const auto& d : diagnostics) {
    ordered_json o;
    o["code"] = std::string(to_string(d.code));
    o["message"] = d.message;
    if (d.row) o["row"] = *d.row;
    if (d.column) o["column"] = *d.column;
    out.push_back(std::move(o));
  }
  return out;
}

void send_document_error(httplib::Response& res, const DocumentError& e) {
  ordered_json body;
  body["error"] = std::string(to_string(e.kind()));
  body["message"] = e.what();
  body["location"] = e.location();
  // Every 400 carries at least one diagnostic entry, including JSON-level failures.
  ordered_json diagnostics = diagnostics_json(e.diagnostics());
  if (diagnostics.empty()) {
    ordered_json o;
    o["code"] = std::string(to_string(e.kind()));
    o["message"] = e.what();
    if (!e.location().empty()) o["location"] = e.location();
    diagnostics.push_back(std::move(o));
  }
  body["diagnostics"] = std::move(diagnostics);
  send_json(res, 400, body);
}

double query_number(const httplib::Request& req, const char* key, double fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string v = req.get_param_value(key);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw BadRequest{std::string("query parameter '") + key + "' is not a finite number"};
  }
  return out;
}

EvaluationConfig query_config(const httplib::Request& req, const ProblemDocument& doc) {
  const EvaluationConfig base = doc.defaults.value_or(EvaluationConfig{});
  EvaluationConfig cfg{query_number(req, "iMin", base.i_min), query_number(req, "iMax", base.i_max),
                       query_number(req, "k", base.k)};
  try {
    check_config(cfg);
  } catch (const ConfigError& e) {
    throw BadRequest{e.what()};
  }
  return cfg;
}

std::optional<std::uint64_t> if_match(const httplib::Request& req) {
  if (!req.has_header("If-Match")) return std::nullopt;
  std::string v = req.get_header_value("If-Match");
  if (v.rfind("W/", 0) == 0) v.erase(0, 2);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  std::uint64_t rev = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), rev);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw BadRequest{"If-Match must carry a revision number"};
  }
  return rev;
}

ordered_json summary(const StoredProblem& p) {
  ordered_json o;
  o["id"] = p.id;
  o["revision"] = p.revision;
  o["title"] = p.document.title;
  return o;
}

void set_revision_headers(httplib::Response& res, const StoredProblem& p) {
  res.set_header("ETag", "\"" + std::to_string(p.revision) + "\"");
  res.set_header("X-Revision", std::to_string(p.revision));
}

constexpr const char* kIndexPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>ndmm</title></head>
<body><h1>ndmm service</h1>
<p>No web UI assets are mounted. Start the server with <code>--web-root</code> to serve them.</p>
<p>API root: <code>/api/problems</code></p></body></html>
)";

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceOptions opts)
      : options(std::move(opts)), store(options.data_dir ? ProblemStore(*options.data_dir) : ProblemStore()) {
    routes();
  }

  // Wraps a handler so BadRequest and library errors map onto status codes.
  template <typename F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const BadRequest& e) {
        send_error(res, 400, "bad-request", e.message);
      } catch (const DocumentError& e) {
        send_document_error(res, e);
      } catch (const RevisionConflict& e) {
        ordered_json body;
        body["error"] = "revision-conflict";
        body["message"] = e.what();
        body["revision"] = e.actual();
        send_json(res, 409, body);
      } catch (const ConfigError& e) {
        send_error(res, 400, "invalid-config", e.what());
      } catch (const Error& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  void routes() {
    server.set_default_headers({
        {"Access-Control-Allow-Origin", "*"},
        {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
        {"Access-Control-Allow-Headers", "Content-Type, If-Match"},
        {"Access-Control-Expose-Headers", "ETag, X-Revision, Location"},
    });
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/api/problems", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto parsed = parse_problem(req.body);
      auto snap = store.create(std::move(parsed.document));
      ordered_json body = summary(*snap);
      body["warnings"] = parsed.warnings;
      res.set_header("Location", "/api/problems/" + snap->id);
      set_revision_headers(res, *snap);
      send_json(res, 201, body);
    }));

    server.Get("/api/problems", guarded([this](const httplib::Request&, httplib::Response& res) {
      ordered_json body = ordered_json::array();
      for (const auto& snap : store.list()) body.push_back(summary(*snap));
      send_json(res, 200, body);
    }));

    server.Get(kIdRoute, guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto snap = find(req, res);
      if (!snap) return;
      set_revision_headers(res, *snap);
      res.status = 200;
      res.set_content(serialize_problem(snap->document), kJson);
    }));

    server.Put(kIdRoute, guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      if (!store.get(id)) return not_found(res, id);
      const auto expected = if_match(req);
      auto parsed = parse_problem(req.body);
      const auto snap = store.update(id, std::move(parsed.document), expected);
      if (!snap) return not_found(res, id);
      ordered_json body = summary(*snap);
      body["warnings"] = parsed.warnings;
      set_revision_headers(res, *snap);
      send_json(res, 200, body);
    }));

    server.Delete(kIdRoute, guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      if (!store.remove(id)) return not_found(res, id);
      res.status = 204;
    }));

    server.Get(std::string(kIdRoute) + "/evaluate",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const auto snap = find(req, res);
                 if (!snap) return;
                 const auto cfg = query_config(req, snap->document);
                 const auto result = evaluate(snap->document.problem, cfg);
                 set_revision_headers(res, *snap);
                 res.status = 200;
                 res.set_content(evaluation_to_json(snap->document.problem, result), kJson);
               }));

    server.Get(std::string(kIdRoute) + "/sensitivity",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const auto snap = find(req, res);
                 if (!snap) return;
                 const auto cfg = query_config(req, snap->document);
                 const auto segments = k_sensitivity(snap->document.problem, cfg.i_min, cfg.i_max);
                 set_revision_headers(res, *snap);
                 res.status = 200;
                 res.set_content(sensitivity_to_json(snap->document.problem, segments), kJson);
               }));

    if (options.web_root) {
      if (!server.set_mount_point("/", options.web_root->string())) {
        throw Error("web root " + options.web_root->string() + " is not a directory");
      }
    } else {
      server.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(kIndexPage, "text/html; charset=utf-8");
      });
    }

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty() && res.status == 404) send_error(res, 404, "not-found", "no such resource");
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "unexpected error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      send_error(res, 500, "internal", what);
    });
  }

  ProblemSnapshot find(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    auto snap = store.get(id);
    if (!snap) not_found(res, id);
    return snap;
  }

  static void not_found(httplib::Response& res, const std::string& id) {
    send_error(res, 404, "not-found", "no problem with id '" + id + "'");
  }

  ServiceOptions options;
  ProblemStore store;
  httplib::Server server;
  bool bound = false;
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Service::~Service() { stop(); }

int Service::bind() {
  auto& o = impl_->options;
  int port = o.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(o.host);
    if (port < 0) throw Error("cannot bind " + o.host + " to an ephemeral port");
  } else if (!impl_->server.bind_to_port(o.host, port)) {
    throw Error("cannot bind " + o.host + ":" + std::to_string(port) + " (port busy or not permitted)");
  }
  impl_->bound = true;
  return port;
}

void Service::listen() {
  if (!impl_->bound) throw Error("Service::listen called before bind");
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_) impl_->server.stop();
}

ProblemStore& Service::store() { return impl_->store; }

}  // namespace ndmm
