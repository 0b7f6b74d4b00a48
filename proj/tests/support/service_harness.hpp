#pragma once

// Runs a Service on an ephemeral loopback port for the lifetime of the object.

#include <httplib.h>

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <thread>

#include "micromap/service.hpp"

namespace fixtures {

class RunningService {
 public:
  explicit RunningService(std::filesystem::path data_dir, std::size_t max_body = 10 * 1024 * 1024) {
    micromap::ServiceOptions options;
    options.data_dir = std::move(data_dir);
    options.max_body_bytes = max_body;
    service_ = std::make_unique<micromap::Service>(options);
    port_ = service_->bind({"127.0.0.1", 0});
    if (port_ < 0) throw std::runtime_error("cannot bind loopback port");
    thread_ = std::thread([this] { service_->listen(); });
    service_->wait_until_ready();
  }
  ~RunningService() {
    service_->stop();
    thread_.join();
  }
  RunningService(const RunningService&) = delete;
  RunningService& operator=(const RunningService&) = delete;

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    return c;
  }
  int port() const { return port_; }
  micromap::Service& service() { return *service_; }

 private:
  std::unique_ptr<micromap::Service> service_;
  int port_ = -1;
  std::thread thread_;
};

inline httplib::Result upload(httplib::Client& client, const std::string& csv, const std::string& filename,
                              const std::string& kind = "table", const std::string& name = {}) {
  httplib::MultipartFormDataItems items{{"file", csv, filename, "text/csv"}, {"kind", kind, "", ""}};
  if (!name.empty()) items.push_back({"name", name, "", ""});
  return client.Post("/api/datasets", items);
}

}  // namespace fixtures
