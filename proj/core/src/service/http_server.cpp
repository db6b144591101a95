#include "vfk/service/http_server.hpp"

#include <httplib.h>

namespace vfk::service {

using nlohmann::json;

struct HttpServer::Impl {
  Api& api;
  httplib::Server server;

  explicit Impl(Api& a) : api(a) {}

  static void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  }

  static std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
      return json::parse(req.body.empty() ? std::string("{}") : req.body);
    } catch (const json::exception& e) {
      send(res, Response{400, json{{"error", "bad_request"}, {"detail", std::string("invalid JSON: ") + e.what()}}});
      return std::nullopt;
    }
  }

  void json_route(const char* pattern, Response (Api::*handler)(const json&)) {
    server.Post(pattern, [this, handler](const httplib::Request& req, httplib::Response& res) {
      if (auto body = parse_body(req, res)) send(res, (api.*handler)(*body));
    });
  }

  void routes() {
    json_route("/api/synthesize", &Api::synthesize);
    json_route("/api/decide", &Api::decide);
    json_route("/api/dfa", &Api::dfa);
    json_route("/api/pair", &Api::pair);

    server.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      if (req.is_multipart_form_data()) {
        if (!req.has_file("image")) {
          send(res, Response{400, json{{"error", "bad_request"}, {"detail", "multipart field 'image' missing"}}});
          return;
        }
        send(res, api.upload(req.get_file_value("image").content));
      } else {
        send(res, api.upload(req.body));
      }
    });
    server.Post(R"(/api/sessions/([^/]+)/deform)", [this](const httplib::Request& req, httplib::Response& res) {
      if (auto body = parse_body(req, res)) send(res, api.deform(req.matches[1], *body));
    });
    server.Post("/api/deform", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      if (!body->is_object() || !(*body)["session_id"].is_string()) {
        send(res, Response{400, json{{"error", "bad_request"}, {"detail", "missing field 'session_id'"}}});
        return;
      }
      send(res, api.deform((*body)["session_id"].get<std::string>(), *body));
    });
    server.Get("/api/presets", [this](const httplib::Request&, httplib::Response& res) { send(res, api.presets()); });
    server.Get(R"(/api/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, api.session(req.matches[1]));
    });

    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      const char* code = res.status == 404 ? "not_found" : "http_error";
      res.set_content(json{{"error", code}, {"detail", req.method + " " + req.path}}.dump(), "application/json");
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      Response r{500, json{{"error", "internal"}, {"detail", "unknown failure"}}};
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        r = error_response(e);
      } catch (...) {
      }
      send(res, r);
    });
  }
};

HttpServer::HttpServer(Api& api, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(api)) {
  impl_->routes();
  if (static_dir && !impl_->server.set_mount_point("/", static_dir->string())) {
    throw Error("static directory " + static_dir->string() + " does not exist");
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace vfk::service
