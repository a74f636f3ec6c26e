#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "childplay/core/errors.hpp"

namespace childplay {

struct ChatMessage {
  std::string role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string model;
  double temperature = 1.0;
  std::vector<ChatMessage> messages;
};

inline nlohmann::json messages_json(const std::vector<ChatMessage>& messages) {
  auto out = nlohmann::json::array();
  for (const auto& m : messages) out.push_back({{"role", m.role}, {"content", m.content}});
  return out;
}

inline nlohmann::json to_json(const ChatRequest& r) {
  return {{"model", r.model}, {"temperature", r.temperature}, {"messages", messages_json(r.messages)}};
}

/// Completion backend. Implementations must tolerate concurrent calls.
class Transport {
 public:
  virtual ~Transport() = default;
  /// Returns the completion text; throws TransportError on failure.
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// Scripted replies from a callback.
class StubTransport final : public Transport {
 public:
  using Fn = std::function<std::string(const ChatRequest&)>;
  explicit StubTransport(Fn fn) : fn_(std::move(fn)) {}
  static std::shared_ptr<StubTransport> constant(std::string reply) {
    return std::make_shared<StubTransport>([reply = std::move(reply)](const ChatRequest&) { return reply; });
  }
  std::string complete(const ChatRequest& request) override {
    std::lock_guard lock(mu_);
    ++calls_;
    return fn_(request);
  }
  std::string name() const override { return "stub"; }
  int calls() const {
    std::lock_guard lock(mu_);
    return calls_;
  }

 private:
  Fn fn_;
  mutable std::mutex mu_;
  int calls_ = 0;
};

/// Replays recorded transcripts. File format:
///   {"entries": [{"messages": [...], "replies": ["...", ...]}, ...]}
/// A request is matched on its exact message list; repeated identical requests
/// consume `replies` in order and the last reply is reused once exhausted.
class FixtureTransport final : public Transport {
 public:
  explicit FixtureTransport(const nlohmann::json& fixture) { load(fixture); }

  static std::shared_ptr<FixtureTransport> from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("fixture", "cannot open fixture file '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("fixture", "fixture file '" + path + "' is not valid JSON: " + e.what());
    }
    return std::make_shared<FixtureTransport>(j);
  }

  std::string complete(const ChatRequest& request) override {
    const auto key = messages_json(request.messages).dump();
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) throw TransportError("no fixture entry for request");
    auto& e = it->second;
    const auto& reply = e.replies[std::min(e.cursor, e.replies.size() - 1)];
    ++e.cursor;
    return reply;
  }
  std::string name() const override { return "fixture"; }

 private:
  struct Entry {
    std::vector<std::string> replies;
    std::size_t cursor = 0;
  };

  void load(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array())
      throw ConfigError("fixture", "fixture must be an object with an 'entries' array");
    for (const auto& e : j.at("entries")) {
      auto replies = e.at("replies").get<std::vector<std::string>>();
      if (replies.empty()) throw ConfigError("fixture", "fixture entry without replies");
      auto& slot = entries_[e.at("messages").dump()];
      slot.replies.insert(slot.replies.end(), replies.begin(), replies.end());
    }
  }

  std::mutex mu_;
  std::map<std::string, Entry> entries_;
};

/// Wraps another transport and records every exchange in fixture format.
class RecordingTransport final : public Transport {
 public:
  explicit RecordingTransport(std::shared_ptr<Transport> inner) : inner_(std::move(inner)) {}
  std::string complete(const ChatRequest& request) override {
    auto reply = inner_->complete(request);
    std::lock_guard lock(mu_);
    log_[messages_json(request.messages).dump()].push_back(reply);
    return reply;
  }
  std::string name() const override { return "recording:" + inner_->name(); }

  nlohmann::json fixture() const {
    std::lock_guard lock(mu_);
    auto entries = nlohmann::json::array();
    for (const auto& [key, replies] : log_)
      entries.push_back({{"messages", nlohmann::json::parse(key)}, {"replies", replies}});
    return {{"entries", entries}};
  }

 private:
  std::shared_ptr<Transport> inner_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<std::string>> log_;
};

struct RetryPolicy {
  int retries = 3;
  std::chrono::milliseconds base_delay{500};
};

/// Calls `transport` with exponential backoff; rethrows after the last retry.
inline std::string complete_with_retries(Transport& transport, const ChatRequest& request,
                                         const RetryPolicy& policy = {}) {
  auto delay = policy.base_delay;
  for (int attempt = 0;; ++attempt) {
    try {
      return transport.complete(request);
    } catch (const TransportError& e) {
      if (attempt >= policy.retries)
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(attempt + 1) + " attempts)");
    }
    std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

/// Process-wide count of requests put on the wire by the live transport.
inline std::atomic<long>& live_request_count() {
  static std::atomic<long> count{0};
  return count;
}

}  // namespace childplay
