#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

#include "childplay/chem/gts.hpp"
#include "childplay/games/session.hpp"
#include "childplay/harness/export.hpp"
#include "childplay/players/players.hpp"

namespace childplay::service {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

inline ApiResponse error_response(int status, const std::string& message) {
  return {status, {{"error", message}, {"code", status}}};
}

struct ServiceConfig {
  std::optional<std::filesystem::path> store_path;
  std::chrono::seconds ttl = std::chrono::hours(24);
  /// Requests per client address per minute; 0 disables the cap.
  int per_ip_cap = 600;
  /// Backend for llm opponents; llm opponents are refused when unset.
  std::shared_ptr<Transport> llm_transport;
  std::string default_model = "gpt-4o";
  RetryPolicy llm_retry;
  std::function<std::int64_t()> clock = [] {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
};

/// 128 random bits as 32 hex characters.
inline std::string new_token() {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (int word = 0; word < 4; ++word) {
    auto v = static_cast<std::uint32_t>(device());
    for (int k = 0; k < 8; ++k, v >>= 4) out.push_back(hex[v & 0xf]);
  }
  return out;
}

inline std::uint64_t random_seed() {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  return (static_cast<std::uint64_t>(device()) << 32) | device();
}

inline nlohmann::json status_json(const GameStatus& s) { return to_json(s); }

/// Request dispatcher with in-memory session store. Independent of any
/// HTTP library so it can be exercised directly.
class ChildPlayApi {
 public:
  explicit ChildPlayApi(ServiceConfig config = {}) : cfg_(std::move(config)) { load(); }

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body,
                     const std::string& client = "local") {
    if (!admit(client)) return error_response(429, "too many requests");
    try {
      return route(method, path, body);
    } catch (const ConfigError& e) {
      return error_response(400, e.what());
    } catch (const ProtocolError& e) {
      return error_response(409, e.what());
    } catch (const TransportError& e) {
      return error_response(502, e.what());
    } catch (const std::exception& e) {
      return error_response(500, e.what());
    }
  }

  std::size_t live_games() const {
    std::lock_guard lock(store_mu_);
    return games_.size();
  }
  std::size_t live_puzzles() const {
    std::lock_guard lock(store_mu_);
    return puzzles_.size();
  }

 private:
  struct Puzzle {
    std::mutex mu;
    std::uint64_t seed = 0;
    chem::GtsPuzzle puzzle;
    std::int64_t created_at = 0;
    bool solved = false;
  };

  struct LiveGame {
    std::mutex mu;
    std::optional<GameSession> session;
    PlayerSpec opponent;
    std::int64_t created_at = 0;
  };

  static constexpr PlayerId kHuman = PlayerId::P1;

  ApiResponse route(std::string_view method, std::string_view path, std::string_view body) {
    if (path == "/api/gts/new") return method == "POST" ? gts_new() : error_response(405, "method not allowed");
    if (path == "/api/gts/evaluate")
      return method == "POST" ? gts_evaluate(parse_body(body)) : error_response(405, "method not allowed");
    if (path == "/api/games") return method == "POST" ? game_new(parse_body(body)) : error_response(405, "method not allowed");
    constexpr std::string_view prefix = "/api/games/";
    if (path.substr(0, prefix.size()) == prefix) {
      auto rest = path.substr(prefix.size());
      const auto slash = rest.find('/');
      const std::string id(rest.substr(0, slash));
      if (slash == std::string_view::npos)
        return method == "GET" ? game_get(id) : error_response(405, "method not allowed");
      if (rest.substr(slash) == "/moves")
        return method == "POST" ? game_move(id, parse_body(body)) : error_response(405, "method not allowed");
    }
    return error_response(404, "not found");
  }

  static nlohmann::json parse_body(std::string_view body) {
    if (body.empty()) return nlohmann::json::object();
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("body", "request body must be a JSON object");
    return j;
  }

  static std::string required_string(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ConfigError(key, "missing string field '" + key + "'");
    return j.at(key).get<std::string>();
  }

  bool admit(const std::string& client) {
    if (cfg_.per_ip_cap <= 0) return true;
    const auto minute = cfg_.clock() / 60;
    std::lock_guard lock(rate_mu_);
    auto& slot = rate_[client];
    if (slot.first != minute) slot = {minute, 0};
    return ++slot.second <= cfg_.per_ip_cap;
  }

  // ---- GtS ----

  ApiResponse gts_new() {
    auto p = std::make_shared<Puzzle>();
    p->seed = random_seed();
    Rng rng(p->seed);
    p->puzzle = chem::make_puzzle(rng);
    p->created_at = cfg_.clock();
    const auto id = new_token();
    const auto ascii = p->puzzle.depiction.text();
    {
      std::lock_guard lock(store_mu_);
      evict_locked();
      puzzles_[id] = p;
    }
    record(id, *p);
    save();
    return {200, {{"id", id}, {"ascii", ascii}}};
  }

  ApiResponse gts_evaluate(const nlohmann::json& req) {
    const auto id = required_string(req, "id");
    const auto smiles = required_string(req, "smiles");
    auto p = find(puzzles_, id);
    if (!p) return error_response(404, "unknown puzzle id");
    chem::GtsScore score;
    bool newly_solved = false;
    {
      std::lock_guard lock(p->mu);
      score = chem::evaluate_prediction(p->puzzle.molecule, smiles);
      newly_solved = score.correct && !p->solved;
      if (score.correct) p->solved = true;
      if (newly_solved) record(id, *p);
    }
    if (newly_solved) save();
    auto body = to_json(score);
    body["id"] = id;
    body["solved"] = score.correct;
    return {200, body};
  }

  // ---- games ----

  PlayerSpec opponent_spec(const nlohmann::json& req, GameKind kind) const {
    PlayerSpec spec;
    if (req.contains("opponent")) {
      const auto& o = req.at("opponent");
      if (!o.is_string() && !o.is_object()) throw ConfigError("opponent", "opponent must be a string or object");
      spec = player_spec_from_json(o);
    }
    if (spec.kind == PlayerKind::Human) throw ConfigError("opponent", "opponent must be random, minimax or llm");
    if (spec.kind == PlayerKind::Llm) {
      if (!cfg_.llm_transport) throw ConfigError("opponent", "llm opponents are not configured on this server");
      if (!spec.model) spec.model = cfg_.default_model;
    }
    spec.validate(kind);
    return spec;
  }

  nlohmann::json view(const std::string& id, const LiveGame& g) const {
    const Game& game = g.session->game();
    nlohmann::json j = {{"id", id},
                        {"game", std::string(to_string(g.session->kind()))},
                        {"prompt", game.intro_prompt()},
                        {"state", game.text_state(kHuman)},
                        {"status", status_json(game.status())},
                        {"moves", g.session->log_json()}};
    if (game.status().over) reveal(game, j);
    return j;
  }

  /// Answer key of a finished single-shot game.
  static void reveal(const Game& game, nlohmann::json& j) {
    if (const auto* ss = dynamic_cast<const SingleShotGame*>(&game); ss && ss->judgement())
      j["judgement"] = std::string(to_string(*ss->judgement()));
    if (const auto* s = dynamic_cast<const ShapesGame*>(&game)) j["solution"] = std::string(shapes::to_string(s->board().shape));
    if (const auto* v = dynamic_cast<const LclValidityGame*>(&game)) j["solution"] = v->expected_validity() ? "valid" : "invalid";
  }

  ApiResponse game_new(const nlohmann::json& req) {
    const auto kind = game_kind_from_string(required_string(req, "game"));
    if (kind == GameKind::Gts) throw ConfigError("game", "use /api/gts/new for Guess-the-SMILES");
    const auto options = req.contains("options") ? req.at("options") : Options::object();
    if (!options.is_object()) throw ConfigError("options", "options must be a JSON object");
    std::uint64_t seed = random_seed();
    if (req.contains("seed")) {
      if (!req.at("seed").is_number_unsigned()) throw ConfigError("seed", "seed must be a non-negative integer");
      seed = req.at("seed").get<std::uint64_t>();
    }
    auto g = std::make_shared<LiveGame>();
    g->opponent = opponent_spec(req, kind);
    g->session.emplace(kind, options, seed);
    g->created_at = cfg_.clock();
    const auto id = new_token();
    auto body = view(id, *g);
    {
      std::lock_guard lock(store_mu_);
      evict_locked();
      games_[id] = g;
    }
    {
      std::lock_guard lock(g->mu);
      record(id, *g);
    }
    save();
    return {200, body};
  }

  ApiResponse game_get(const std::string& id) {
    auto g = find(games_, id);
    if (!g) return error_response(404, "unknown game id");
    std::lock_guard lock(g->mu);
    return {200, view(id, *g)};
  }

  /// Opponent moves are a pure function of the game seed and turn, so a
  /// replayed session makes the same replies.
  std::string opponent_move(const LiveGame& g) const {
    const auto& s = *g.session;
    const auto seed = derive_seed(s.seed(), static_cast<std::uint64_t>(s.turn()));
    auto player = make_player(g.opponent, seed, opponent(kHuman), cfg_.llm_transport, cfg_.llm_retry);
    return player->choose(s, opponent(kHuman));
  }

  ApiResponse game_move(const std::string& id, const nlohmann::json& req) {
    auto g = find(games_, id);
    if (!g) return error_response(404, "unknown game id");
    const auto move = required_string(req, "move");
    nlohmann::json body;
    {
      std::lock_guard lock(g->mu);
      auto& s = *g->session;
      if (s.game().status().over) return error_response(409, "game is over");
      if (s.game().to_move() != kHuman) {
        // A previous opponent reply failed; finish it before taking the human move.
        s.apply_move(opponent(kHuman), opponent_move(*g));
        if (s.game().status().over) return error_response(409, "game is over");
      }
      const auto outcome = s.apply_move(kHuman, move);
      body["outcome"] = std::string(to_string(outcome));
      record(id, *g);
      if (!s.game().status().over && s.game().to_move() != kHuman) {
        const auto reply = opponent_move(*g);
        const auto reply_outcome = s.apply_move(opponent(kHuman), reply);
        body["opponent_move"] = {{"move", reply}, {"outcome", std::string(to_string(reply_outcome))}};
        record(id, *g);
      }
      body.update(view(id, *g));
    }
    save();
    return {200, body};
  }

  /// Caller holds g.mu. Refreshes the persisted form of one game.
  void record(const std::string& id, const LiveGame& g) {
    if (!cfg_.store_path) return;
    nlohmann::json j = {{"session", g.session->snapshot()},
                        {"opponent", to_json(g.opponent)},
                        {"created_at", g.created_at}};
    std::lock_guard lock(store_mu_);
    game_snapshots_[id] = std::move(j);
  }

  void record(const std::string& id, const Puzzle& p) {
    if (!cfg_.store_path) return;
    nlohmann::json j = {{"seed", p.seed}, {"created_at", p.created_at}, {"solved", p.solved}};
    std::lock_guard lock(store_mu_);
    puzzle_snapshots_[id] = std::move(j);
  }

  template <typename Map>
  auto find(Map& m, const std::string& id) -> typename Map::mapped_type {
    std::lock_guard lock(store_mu_);
    evict_locked();
    auto it = m.find(id);
    return it == m.end() ? nullptr : it->second;
  }

  void evict_locked() {
    const auto cutoff = cfg_.clock() - cfg_.ttl.count();
    std::erase_if(games_, [&](const auto& kv) { return kv.second->created_at < cutoff; });
    std::erase_if(puzzles_, [&](const auto& kv) { return kv.second->created_at < cutoff; });
    std::erase_if(game_snapshots_, [&](const auto& kv) { return !games_.contains(kv.first); });
    std::erase_if(puzzle_snapshots_, [&](const auto& kv) { return !puzzles_.contains(kv.first); });
  }

  // ---- persistence ----

  void save() {
    if (!cfg_.store_path) return;
    std::lock_guard save_lock(save_mu_);
    nlohmann::json snap;
    {
      std::lock_guard lock(store_mu_);
      evict_locked();
      snap = {{"games", nlohmann::json(game_snapshots_)}, {"puzzles", nlohmann::json(puzzle_snapshots_)}};
    }
    write_file_atomic(*cfg_.store_path, snap.dump() + "\n");
  }

  void load() {
    if (!cfg_.store_path || !std::filesystem::exists(*cfg_.store_path)) return;
    const auto snap = nlohmann::json::parse(read_file(*cfg_.store_path));
    for (const auto& [id, j] : snap.at("games").items()) {
      auto g = std::make_shared<LiveGame>();
      g->session.emplace(GameSession::replay(j.at("session")));
      g->opponent = player_spec_from_json(j.at("opponent"));
      g->created_at = j.at("created_at").get<std::int64_t>();
      games_[id] = g;
      game_snapshots_[id] = j;
    }
    for (const auto& [id, j] : snap.at("puzzles").items()) {
      auto p = std::make_shared<Puzzle>();
      p->seed = j.at("seed").get<std::uint64_t>();
      Rng rng(p->seed);
      p->puzzle = chem::make_puzzle(rng);
      p->created_at = j.at("created_at").get<std::int64_t>();
      p->solved = j.at("solved").get<bool>();
      puzzles_[id] = p;
      puzzle_snapshots_[id] = j;
    }
    std::lock_guard lock(store_mu_);
    evict_locked();
  }

  ServiceConfig cfg_;
  mutable std::mutex store_mu_;
  std::mutex save_mu_;
  std::map<std::string, std::shared_ptr<LiveGame>> games_;
  std::map<std::string, std::shared_ptr<Puzzle>> puzzles_;
  std::map<std::string, nlohmann::json> game_snapshots_;
  std::map<std::string, nlohmann::json> puzzle_snapshots_;
  std::mutex rate_mu_;
  std::map<std::string, std::pair<std::int64_t, int>> rate_;
};

}  // namespace childplay::service
