#include "ndmm/store.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

namespace ndmm {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace

RevisionConflict::RevisionConflict(std::uint64_t expected, std::uint64_t actual)
    : Error("revision conflict: expected " + std::to_string(expected) + ", current " + std::to_string(actual)),
      actual_(actual) {}

bool ProblemStore::is_valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

ProblemStore::ProblemStore(fs::path dir) : dir_(dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("data directory " + dir.string() + " is not usable" + (ec ? ": " + ec.message() : ""));
  }
  // Writability probe; a read-only directory must fail at startup, not on first write.
  const fs::path probe = dir / ".ndmm-write-probe";
  {
    std::ofstream out(probe, std::ios::trunc);
    if (!out) throw Error("data directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    if (!is_valid_id(id)) {
      load_warnings_.push_back("skipping " + path.filename().string() + ": not a problem id");
      continue;
    }
    try {
      auto parsed = parse_problem(read_file(path));
      problems_.emplace(id, std::make_shared<const StoredProblem>(StoredProblem{id, 1, std::move(parsed.document)}));
    } catch (const Error& e) {
      load_warnings_.push_back("skipping " + path.filename().string() + ": " + e.what());
    }
  }
}

std::string ProblemStore::fresh_id_locked() {
  static constexpr char kDigits[] = "0123456789abcdef";
  thread_local std::mt19937_64 rng{std::random_device{}()};
  for (;;) {
    std::uint64_t bits = rng() ^ ++id_counter_;
    std::string id(12, '0');
    for (auto& c : id) {
      c = kDigits[bits & 0xf];
      bits >>= 4;
    }
    if (!problems_.contains(id)) return id;
  }
}

void ProblemStore::persist_locked(const StoredProblem& p) const {
  if (dir_) write_atomically(*dir_ / (p.id + ".json"), serialize_problem(p.document));
}

ProblemSnapshot ProblemStore::create(ProblemDocument doc) {
  std::unique_lock lock(mutex_);
  auto id = fresh_id_locked();
  auto snap = std::make_shared<const StoredProblem>(StoredProblem{id, 1, std::move(doc)});
  persist_locked(*snap);
  problems_.emplace(std::move(id), snap);
  return snap;
}

ProblemSnapshot ProblemStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = problems_.find(id);
  return it == problems_.end() ? nullptr : it->second;
}

std::vector<ProblemSnapshot> ProblemStore::list() const {
  std::shared_lock lock(mutex_);
  std::vector<ProblemSnapshot> out;
  out.reserve(problems_.size());
  for (const auto& [_, snap] : problems_) out.push_back(snap);
  return out;
}

ProblemSnapshot ProblemStore::update(const std::string& id, ProblemDocument doc,
                                     std::optional<std::uint64_t> expected_revision) {
  std::unique_lock lock(mutex_);
  const auto it = problems_.find(id);
  if (it == problems_.end()) return nullptr;
  const std::uint64_t current = it->second->revision;
  if (expected_revision && *expected_revision != current) throw RevisionConflict(*expected_revision, current);
  auto snap = std::make_shared<const StoredProblem>(StoredProblem{id, current + 1, std::move(doc)});
  persist_locked(*snap);
  it->second = snap;
  return snap;
}

bool ProblemStore::remove(const std::string& id) {
  std::unique_lock lock(mutex_);
  const auto it = problems_.find(id);
  if (it == problems_.end()) return false;
  if (dir_) {
    std::error_code ec;
    fs::remove(*dir_ / (id + ".json"), ec);
    if (ec) throw Error("cannot delete " + id + ".json: " + ec.message());
  }
  problems_.erase(it);
  return true;
}

}  // namespace ndmm
