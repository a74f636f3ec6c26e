#pragma once

#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "childplay/core/rng.hpp"
#include "childplay/games/session.hpp"
#include "childplay/players/minimax.hpp"
#include "childplay/players/transport.hpp"

namespace childplay {

enum class PlayerKind : std::uint8_t { Random, Minimax, Llm, Human };

inline std::string_view to_string(PlayerKind k) {
  switch (k) {
    case PlayerKind::Random: return "random";
    case PlayerKind::Minimax: return "minimax";
    case PlayerKind::Llm: return "llm";
    case PlayerKind::Human: return "human";
  }
  return "?";
}

inline PlayerKind player_kind_from_string(std::string_view s) {
  for (auto k : {PlayerKind::Random, PlayerKind::Minimax, PlayerKind::Llm, PlayerKind::Human})
    if (to_string(k) == s) return k;
  throw ConfigError("player", "unknown player kind '" + std::string(s) + "'");
}

struct PlayerSpec {
  PlayerKind kind = PlayerKind::Random;
  std::optional<std::string> model;
  double temperature = 1.0;
  std::optional<std::string> endpoint;
  std::optional<std::uint64_t> seed;
  bool include_history = false;

  /// "random", "minimax", "human", "llm" or "llm:<model>".
  static PlayerSpec parse(std::string_view text) {
    PlayerSpec s;
    const auto colon = text.find(':');
    s.kind = player_kind_from_string(text.substr(0, colon));
    if (colon != std::string_view::npos) {
      if (s.kind != PlayerKind::Llm) throw ConfigError("player", "only llm players take a model");
      s.model = std::string(text.substr(colon + 1));
    }
    return s;
  }

  std::string label() const {
    if (kind == PlayerKind::Llm && model) return *model;
    return std::string(to_string(kind));
  }

  /// `endpoint_required`: live transport needs a URL; stub and fixture do not.
  void validate(GameKind game, bool endpoint_required = false) const {
    if (temperature < 0.0 || temperature > 2.0) throw ConfigError("temperature", "temperature must be in [0, 2]");
    if (kind == PlayerKind::Minimax && game != GameKind::TicTacToe)
      throw ConfigError("player", "minimax is only available for tictactoe");
    if (kind == PlayerKind::Llm) {
      if (!model || model->empty()) throw ConfigError("model", "llm player requires a model");
      if (endpoint_required && (!endpoint || endpoint->empty()))
        throw ConfigError("endpoint", "llm player requires an endpoint");
    }
  }
};

inline nlohmann::json to_json(const PlayerSpec& s) {
  nlohmann::json j = {{"kind", std::string(to_string(s.kind))}, {"temperature", s.temperature}};
  if (s.model) j["model"] = *s.model;
  if (s.endpoint) j["endpoint"] = *s.endpoint;
  if (s.seed) j["seed"] = *s.seed;
  if (s.include_history) j["include_history"] = true;
  return j;
}

inline PlayerSpec player_spec_from_json(const nlohmann::json& j) {
  if (j.is_string()) return PlayerSpec::parse(j.get<std::string>());
  PlayerSpec s;
  s.kind = player_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("model")) s.model = j.at("model").get<std::string>();
  if (j.contains("temperature")) s.temperature = j.at("temperature").get<double>();
  if (j.contains("endpoint")) s.endpoint = j.at("endpoint").get<std::string>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("include_history")) s.include_history = j.at("include_history").get<bool>();
  return s;
}

/// Supplies one raw move string for the side to move.
class Player {
 public:
  virtual ~Player() = default;
  virtual std::string choose(const GameSession& session, PlayerId me) = 0;
  virtual std::string name() const = 0;
};

class RandomPlayer final : public Player {
 public:
  explicit RandomPlayer(std::uint64_t seed) : rng_(seed) {}
  std::string choose(const GameSession& s, PlayerId me) override {
    if (s.game().status().over) throw ContractViolation("random_move on a finished game");
    return s.game().random_move(me, rng_);
  }
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

class MinimaxPlayer final : public Player {
 public:
  std::string choose(const GameSession& s, PlayerId me) override {
    const auto* ttt = dynamic_cast<const TicTacToe*>(&s.game());
    if (!ttt) throw ConfigError("player", "minimax is only available for tictactoe");
    return minimax::minimax_move(ttt->board(), me);
  }
  std::string name() const override { return "minimax"; }
};

/// Messages sent to a model for the current position.
inline std::vector<ChatMessage> build_messages(const GameSession& s, PlayerId me, bool include_history = false) {
  const Game& g = s.game();
  if (g.prompt_embeds_state()) return {{"user", g.intro_prompt()}};
  std::string user = g.text_state(me);
  if (include_history && !s.log().empty()) {
    std::string history = "Moves so far:\n";
    for (const auto& m : s.log())
      history += std::to_string(m.turn) + ". " + std::string(to_string(m.player)) + ": " + m.move + "\n";
    user = history + user;
  }
  return {{"system", g.intro_prompt()}, {"user", user + "\nYour move:"}};
}

/// Remote model. The raw completion is kept verbatim in `last_raw`.
class LlmPlayer final : public Player {
 public:
  LlmPlayer(PlayerSpec spec, std::shared_ptr<Transport> transport, RetryPolicy retry = {})
      : spec_(std::move(spec)), transport_(std::move(transport)), retry_(retry) {}

  ChatRequest request_for(const GameSession& s, PlayerId me) const {
    return {spec_.model.value_or(""), spec_.temperature, build_messages(s, me, spec_.include_history)};
  }

  std::string choose(const GameSession& s, PlayerId me) override {
    last_request_ = request_for(s, me);
    last_raw_ = complete_with_retries(*transport_, *last_request_, retry_);
    return *last_raw_;
  }
  std::string name() const override { return spec_.label(); }

  const std::optional<ChatRequest>& last_request() const { return last_request_; }
  const std::optional<std::string>& last_raw() const { return last_raw_; }

 private:
  PlayerSpec spec_;
  std::shared_ptr<Transport> transport_;
  RetryPolicy retry_;
  std::optional<ChatRequest> last_request_;
  std::optional<std::string> last_raw_;
};

/// Console player: shows the prompt and board, reads one line per move.
class HumanPlayer final : public Player {
 public:
  HumanPlayer(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string choose(const GameSession& s, PlayerId me) override {
    if (!shown_intro_) {
      out_ << s.game().intro_prompt() << "\n\n";
      shown_intro_ = true;
    }
    if (!s.game().prompt_embeds_state()) out_ << s.game().text_state(me);
    out_ << "Your move: " << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw TransportError("input closed");
    return line;
  }
  std::string name() const override { return "human"; }

 private:
  std::istream& in_;
  std::ostream& out_;
  bool shown_intro_ = false;
};

/// Test double / oracle: move computed by a callback.
class ScriptedPlayer final : public Player {
 public:
  using Fn = std::function<std::string(const GameSession&, PlayerId)>;
  explicit ScriptedPlayer(Fn fn, std::string name = "scripted") : fn_(std::move(fn)), name_(std::move(name)) {}
  static std::unique_ptr<ScriptedPlayer> sequence(std::vector<std::string> moves) {
    auto i = std::make_shared<std::size_t>(0);
    return std::make_unique<ScriptedPlayer>([moves = std::move(moves), i](const GameSession&, PlayerId) {
      if (*i >= moves.size()) throw ContractViolation("scripted player ran out of moves");
      return moves[(*i)++];
    });
  }
  std::string choose(const GameSession& s, PlayerId me) override { return fn_(s, me); }
  std::string name() const override { return name_; }

 private:
  Fn fn_;
  std::string name_;
};

/// Builds players for one game. `seed` is the per-game seed; the player's
/// own seed (if set) overrides the derived stream.
inline std::unique_ptr<Player> make_player(const PlayerSpec& spec, std::uint64_t seed, PlayerId side,
                                           std::shared_ptr<Transport> transport, RetryPolicy retry = {}) {
  const auto player_seed = spec.seed ? derive_seed(*spec.seed, seed) : derive_seed(seed, 1 + index_of(side));
  switch (spec.kind) {
    case PlayerKind::Random: return std::make_unique<RandomPlayer>(player_seed);
    case PlayerKind::Minimax: return std::make_unique<MinimaxPlayer>();
    case PlayerKind::Llm:
      if (!transport) throw ConfigError("transport", "llm player needs a transport");
      return std::make_unique<LlmPlayer>(spec, std::move(transport), retry);
    case PlayerKind::Human: return std::make_unique<HumanPlayer>(std::cin, std::cout);
  }
  throw ConfigError("player", "unsupported player kind");
}

}  // namespace childplay
