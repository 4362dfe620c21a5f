#include <csignal>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "support/subprocess.hpp"
#include "support/temp_dir.hpp"

using namespace ndmm;
using ndmm::testing::TempDir;

namespace {

const std::string kExample = NDMM_DATA_DIR "/example.json";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ndmm_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ndmm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write(const TempDir& dir, const std::string& name, const std::string& content) {
  const auto path = (dir.path() / name).string();
  std::ofstream(path) << content;
  return path;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate") {
  TempDir dir;
  CHECK(ndmm_run({"validate", kExample}).code == 0);

  const auto negative = write(dir, "neg.json", R"({"version": 1, "criteria": [{"id": "c1", "weight": -1}],
      "alternatives": [{"id": "A"}], "ratings": [["1"]]})");
  const auto r = ndmm_run({"validate", negative});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.find("negative-weight") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  const auto two = write(dir, "two.json", R"({"version": 1, "criteria": [{"id": "c1", "weight": -1},
      {"id": "c1", "weight": 1}], "alternatives": [{"id": "A"}], "ratings": [["1"], ["2"]]})");
  const auto r2 = ndmm_run({"validate", two});
  CHECK(std::count(r2.err.begin(), r2.err.end(), '\n') == 2);

  CHECK(ndmm_run({"validate", (dir.path() / "missing.json").string()}).code == cli::kExitNoInput);
  CHECK(ndmm_run({"validate", write(dir, "bad.json", "{")}).code == cli::kExitFailure);
}

TEST_CASE("evaluate text") {
  const auto r = ndmm_run({"evaluate", kExample});
  CHECK(r.code == 0);
  CHECK(r.out.find("A1: 44 [44,44]") != std::string::npos);
  CHECK(r.out.find("A2: 28+3I [28,31]") != std::string::npos);
  CHECK(r.out.find("A3: 43+2I [43,45]") != std::string::npos);
  CHECK(r.out.find("ranking: A1 A3 A2") != std::string::npos);
  CHECK(r.out.find("selected: A1") != std::string::npos);

  CHECK(ndmm_run({"evaluate", kExample, "--k", "0.5"}).out.find("selected: A3") != std::string::npos);

  const auto k1 = ndmm_run({"evaluate", kExample, "--k", "1"});
  CHECK(k1.out.find("warning: k = 1 equals the admissible bound") != std::string::npos);

  const auto bad = ndmm_run({"evaluate", kExample, "--i-min", "1", "--i-max", "0"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("invalid I-bounds") != std::string::npos);
  CHECK(ndmm_run({"evaluate", kExample, "--k", "-1"}).code == cli::kExitUsage);
  CHECK(ndmm_run({"evaluate", kExample, "--format", "xml"}).code == cli::kExitUsage);
}

TEST_CASE("evaluate json carries the same numbers as text") {
  const auto text = ndmm_run({"evaluate", kExample, "--i-min", "-1", "--k", "0.25"});
  const auto js = ndmm_run({"evaluate", kExample, "--i-min", "-1", "--k", "0.25", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  for (std::size_t a = 0; a < 3; ++a) {
    const std::string line = j["alternatives"][a].get<std::string>() + ": " +
                             j["neutroScores"][a].get<std::string>() + " [" +
                             j["intervals"][a][0].dump() + "," + j["intervals"][a][1].dump() + "]";
    CHECK_MESSAGE(text.out.find(line) != std::string::npos, line);
  }
  CHECK(text.out.find("selected: " + j["selected"].get<std::string>()) != std::string::npos);
}

TEST_CASE("sensitivity") {
  CHECK(ndmm_run({"sensitivity", kExample}).out == "k=0: A1; k>0: A3\n");

  TempDir dir;
  const auto flat = write(dir, "flat.json", R"({"version": 1, "criteria": [{"id": "c", "weight": 1}],
      "alternatives": [{"id": "A"}, {"id": "B"}], "ratings": [["1", "2"]]})");
  CHECK(ndmm_run({"sensitivity", flat}).out == "k>=0: B\n");
  const auto one = write(dir, "one.json", R"({"version": 1, "criteria": [{"id": "c", "weight": 1}],
      "alternatives": [{"id": "solo"}], "ratings": [["I"]]})");
  CHECK(ndmm_run({"sensitivity", one}).out == "k>=0: solo\n");

  const auto js = ndmm_run({"sensitivity", kExample, "--format", "json"});
  CHECK(nlohmann::json::parse(js.out)[1]["kAbove"] == 0);
}

TEST_CASE("plot") {
  TempDir dir;
  const auto path = (dir.path() / "out.svg").string();
  REQUIRE(ndmm_run({"plot", kExample, "--out", path}).code == 0);
  const auto svg = read(path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(ndmm_run({"plot", kExample, "--out", path}).code == 0);
  CHECK(read(path) == svg);

  const auto lines = (dir.path() / "lines.svg").string();
  CHECK(ndmm_run({"plot", kExample, "--out", lines, "--mode", "lines"}).code == 0);
  CHECK(read(lines).find("score-line") != std::string::npos);

  CHECK(ndmm_run({"plot", kExample, "--out", (dir.path() / "no" / "dir.svg").string()}).code == cli::kExitIoError);
  CHECK(ndmm_run({"plot", kExample}).code == cli::kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(ndmm_run({}).code == cli::kExitUsage);
  CHECK(ndmm_run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(ndmm_run({"evaluate"}).code == cli::kExitUsage);
  CHECK(ndmm_run({"--help"}).code == 0);
}

TEST_CASE("serve: unusable data dir fails at startup") {
  TempDir dir;
  const auto file = write(dir, "file", "x");
  const auto r = ndmm_run({"serve", "--port", "0", "--data-dir", file + "/sub"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.find("not usable") != std::string::npos);
}

TEST_CASE("serve: port 0, announced address, clean exit on SIGTERM") {
  TempDir dir;
  testing::Child child({NDMM_CLI_PATH, "serve", "--port", "0", "--data-dir", dir.path().string()});
  const auto line = child.read_line();
  REQUIRE(line.rfind("listening on http://127.0.0.1:", 0) == 0);
  const int port = std::stoi(line.substr(line.rfind(':') + 1));
  CHECK(port > 0);

  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/problems");
  REQUIRE(res);
  CHECK(res->status == 200);

  child.signal(SIGTERM);
  CHECK(child.wait() == 0);
}

TEST_CASE("serve: NDMM_DATA_DIR fallback and default port") {
  TempDir dir;
  setenv("NDMM_DATA_DIR", (dir.path() / "file-not-dir").string().c_str(), 1);
  std::ofstream(dir.path() / "file-not-dir") << "x";
  const auto r = ndmm_run({"serve", "--port", "0"});
  unsetenv("NDMM_DATA_DIR");
  CHECK(r.code == cli::kExitFailure);

  const auto help = ndmm_run({"serve", "--help"});
  CHECK(help.out.find("8787") != std::string::npos);
}
