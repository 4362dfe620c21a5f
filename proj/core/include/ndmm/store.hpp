#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ndmm/io.hpp"

namespace ndmm {

/// Immutable stored revision of a problem document.
struct StoredProblem {
  std::string id;
  std::uint64_t revision = 0;
  ProblemDocument document;
};

using ProblemSnapshot = std::shared_ptr<const StoredProblem>;

/// Thrown by ProblemStore::update when an expected revision does not match.
class RevisionConflict : public Error {
 public:
  RevisionConflict(std::uint64_t expected, std::uint64_t actual);
  std::uint64_t actual() const noexcept { return actual_; }

 private:
  std::uint64_t actual_;
};

/// Thread-safe map id -> problem with optional one-file-per-problem persistence.
///
/// Readers get shared snapshots and never observe a partial write. Writes are
/// serialized; a persisted file is replaced atomically via rename.
class ProblemStore {
 public:
  ProblemStore() = default;

  /// Loads every <id>.json in dir. Throws Error if dir is unusable.
  explicit ProblemStore(std::filesystem::path dir);

  ProblemSnapshot create(ProblemDocument doc);
  ProblemSnapshot get(const std::string& id) const;
  std::vector<ProblemSnapshot> list() const;

  /// Returns nullptr when id is unknown.
  ProblemSnapshot update(const std::string& id, ProblemDocument doc,
                         std::optional<std::uint64_t> expected_revision = std::nullopt);

  bool remove(const std::string& id);

  const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

  /// Warnings collected while loading the directory (skipped files).
  const std::vector<std::string>& load_warnings() const noexcept { return load_warnings_; }

  static bool is_valid_id(const std::string& id);

 private:
  std::string fresh_id_locked();
  void persist_locked(const StoredProblem& p) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, ProblemSnapshot> problems_;
  std::optional<std::filesystem::path> dir_;
  std::vector<std::string> load_warnings_;
  std::uint64_t id_counter_ = 0;
};

}  // namespace ndmm
