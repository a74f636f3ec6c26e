#pragma once

#include <cstdlib>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "childplay/players/transport.hpp"

namespace childplay {

/// Chat-completions client: POST {base}/chat/completions.
class HttpChatTransport final : public Transport {
 public:
  HttpChatTransport(std::string base_url, std::string api_key, int timeout_seconds = 120)
      : base_(std::move(base_url)), key_(std::move(api_key)), timeout_(timeout_seconds) {
    while (!base_.empty() && base_.back() == '/') base_.pop_back();
    const auto scheme_end = base_.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint", "endpoint must start with http:// or https://");
    const auto path_start = base_.find('/', scheme_end + 3);
    origin_ = base_.substr(0, path_start);
    path_ = path_start == std::string::npos ? "" : base_.substr(path_start);
  }

  /// Endpoint from CHILDPLAY_API_BASE (or `fallback`); key from CHILDPLAY_API_KEY.
  static std::shared_ptr<HttpChatTransport> from_env(const std::string& fallback = "https://api.openai.com/v1") {
    const char* base = std::getenv("CHILDPLAY_API_BASE");
    const char* key = std::getenv("CHILDPLAY_API_KEY");
    return std::make_shared<HttpChatTransport>(base && *base ? base : fallback, key ? key : "");
  }

  std::string complete(const ChatRequest& request) override {
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    httplib::Headers headers;
    if (!key_.empty()) headers.emplace("Authorization", "Bearer " + key_);
    ++live_request_count();
    auto res = client.Post(path_ + "/chat/completions", headers, to_json(request).dump(), "application/json");
    if (!res) throw TransportError("request to " + base_ + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw TransportError("endpoint returned HTTP " + std::to_string(res->status));
    try {
      const auto body = nlohmann::json::parse(res->body);
      return body.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed completion response: ") + e.what());
    }
  }

  std::string name() const override { return "live"; }

 private:
  std::string base_;
  std::string key_;
  std::string origin_;
  std::string path_;
  int timeout_;
};

}  // namespace childplay
