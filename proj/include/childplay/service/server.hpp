#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <httplib.h>

#include "childplay/service/api.hpp"

namespace childplay::service {

inline constexpr std::string_view kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>ChildPlay</title></head>
<body>
<h1>ChildPlay service</h1>
<p>No web client is installed. JSON endpoints:</p>
<ul>
<li>POST /api/gts/new</li>
<li>POST /api/gts/evaluate {"id", "smiles"}</li>
<li>POST /api/games {"game", "opponent", "options"}</li>
<li>POST /api/games/{id}/moves {"move"}</li>
<li>GET /api/games/{id}</li>
</ul>
</body></html>
)";

/// Binds a ChildPlayApi to HTTP. Static files come from `static_dir` when it exists.
class Server {
 public:
  Server(std::shared_ptr<ChildPlayApi> api, std::optional<std::filesystem::path> static_dir = std::nullopt)
      : api_(std::move(api)) {
    // The library default adds SO_REUSEPORT, which lets a second server share a busy port.
    http_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
    });
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const auto out = api_->handle(req.method, req.path, req.body, req.remote_addr);
      res.status = out.status;
      res.set_content(out.body.dump(), "application/json");
    };
    http_.Post(R"(/api/.*)", forward);
    http_.Get(R"(/api/.*)", forward);
    http_.Put(R"(/api/.*)", forward);
    http_.Delete(R"(/api/.*)", forward);
    const bool mounted = static_dir && std::filesystem::is_directory(*static_dir) &&
                         http_.set_mount_point("/", static_dir->string());
    if (!mounted || !std::filesystem::exists(*static_dir / "index.html")) {
      http_.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(std::string(kPlaceholderPage), "text/html");
      });
    }
  }

  /// 0 picks a free port. Returns the bound port, or -1 when binding fails.
  int bind(const std::string& host, int port) {
    if (port == 0) return http_.bind_to_any_port(host);
    return http_.bind_to_port(host, port) ? port : -1;
  }

  /// Blocks until stop().
  bool listen() { return http_.listen_after_bind(); }
  void stop() { http_.stop(); }
  bool running() const { return http_.is_running(); }
  void wait_until_ready() const { http_.wait_until_ready(); }

 private:
  std::shared_ptr<ChildPlayApi> api_;
  httplib::Server http_;
};

}  // namespace childplay::service
