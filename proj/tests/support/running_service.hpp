#pragma once

#include <thread>

#include "httplib.h"
#include "ndmm/service.hpp"

namespace ndmm::testing {

/// Service listening on an ephemeral localhost port for the lifetime of the object.
class RunningService {
 public:
  explicit RunningService(ServiceOptions options = {}) : service_([&] {
    options.port = 0;
    return options;
  }()) {
    port_ = service_.bind();
    thread_ = std::thread([this] { service_.listen(); });
  }
  ~RunningService() {
    service_.stop();
    thread_.join();
  }

  int port() const { return port_; }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }
  Service& service() { return service_; }

 private:
  Service service_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace ndmm::testing
