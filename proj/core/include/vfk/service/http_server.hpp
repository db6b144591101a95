#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "vfk/service/api.hpp"

namespace vfk::service {

/// HTTP binding of Api.
///
///   POST /api/synthesize            POST /api/sessions (multipart field "image" or raw PGM)
///   POST /api/sessions/{id}/deform  POST /api/deform {"session_id", ...}
///   POST /api/decide  POST /api/dfa  POST /api/pair
///   GET  /api/presets GET  /api/sessions/{id}
///
/// When a static directory is given it is served at "/".
class HttpServer {
 public:
  explicit HttpServer(Api& api, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error on failure.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vfk::service
