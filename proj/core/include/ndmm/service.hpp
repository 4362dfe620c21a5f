#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ndmm/store.hpp"

namespace ndmm {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8787;  // 0 picks an ephemeral port
  std::optional<std::filesystem::path> data_dir;
  std::optional<std::filesystem::path> web_root;  // static UI assets served at /
};

/// HTTP JSON API over a ProblemStore.
///
///   POST   /api/problems
///   GET    /api/problems
///   GET    /api/problems/{id}
///   PUT    /api/problems/{id}            (optional If-Match: revision)
///   DELETE /api/problems/{id}
///   GET    /api/problems/{id}/evaluate?iMin=&iMax=&k=
///   GET    /api/problems/{id}/sensitivity?iMin=&iMax=
class Service {
 public:
  /// Opens the store. Throws Error if the data directory is unusable.
  explicit Service(ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket and returns the bound port. Throws Error on failure.
  int bind();

  /// Blocks serving requests until stop() is called. Requires bind().
  void listen();

  void stop();

  ProblemStore& store();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ndmm
