#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "childplay/core/game.hpp"
#include "childplay/games/battleship.hpp"
#include "childplay/games/connect_four.hpp"
#include "childplay/games/single_shot.hpp"
#include "childplay/games/tictactoe.hpp"

namespace childplay {

namespace detail {
inline std::optional<std::string> string_option(const Options& options, const std::string& key) {
  if (options.is_null() || !options.contains(key)) return std::nullopt;
  const auto& v = options.at(key);
  if (!v.is_string()) throw ConfigError(key, "option '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<int> fleet_option(const Options& options, int size) {
  if (options.is_null() || !options.contains("fleet")) return {};
  const auto& v = options.at("fleet");
  if (!v.is_array() || v.empty()) throw ConfigError("fleet", "fleet must be a non-empty array of ship lengths");
  std::vector<int> out;
  for (const auto& len : v) {
    if (!len.is_number_integer() || len.get<int>() < 1 || len.get<int>() > size)
      throw ConfigError("fleet", "ship lengths must be integers in [1, " + std::to_string(size) + "]");
    out.push_back(len.get<int>());
  }
  return out;
}
}  // namespace detail

/// Builds an engine from per-game options. Unknown keys and out-of-range
/// values raise ConfigError naming the key.
inline std::unique_ptr<Game> make_game(GameKind kind, const Options& options, std::uint64_t seed) {
  const bool strict = detail::bool_option(options, "strict", false);
  switch (kind) {
    case GameKind::TicTacToe:
      detail::check_option_keys(options, {"board_size"});
      return std::make_unique<TicTacToe>(detail::int_option(options, "board_size", 3, 3, 9), strict);
    case GameKind::ConnectFour:
      detail::check_option_keys(options, {"rows", "cols"});
      return std::make_unique<ConnectFour>(detail::int_option(options, "rows", 7, 4, 10),
                                           detail::int_option(options, "cols", 7, 4, 10), strict);
    case GameKind::Battleship:
    {
      detail::check_option_keys(options, {"board_size", "horizontal_only", "fleet"});
      const int size = detail::int_option(options, "board_size", 5, 3, 10);
      try {
        return std::make_unique<Battleship>(size, seed, detail::bool_option(options, "horizontal_only", false), strict,
                                            detail::fleet_option(options, size));
      } catch (const PlacementInfeasible& e) {
        throw ConfigError("fleet", e.what());
      }
    }
    case GameKind::Shapes: {
      detail::check_option_keys(options, {"board_size", "shape"});
      std::optional<shapes::ShapeKind> forced;
      if (auto s = detail::string_option(options, "shape")) {
        forced = shapes::shape_from_string(*s);
        if (!forced || *forced == shapes::ShapeKind::Circle)
          throw ConfigError("shape", "shape must be one of square, triangle, cross");
      }
      return std::make_unique<ShapesGame>(seed, detail::int_option(options, "board_size", 15, 5, 40), forced, strict);
    }
    case GameKind::LclValidity: {
      detail::check_option_keys(options, {"n_pieces", "valid"});
      std::optional<bool> expected;
      if (!options.is_null() && options.contains("valid")) expected = detail::bool_option(options, "valid", true);
      return std::make_unique<LclValidityGame>(seed, detail::int_option(options, "n_pieces", 3, 2, 20), expected,
                                               strict);
    }
    case GameKind::LclGeneration:
      detail::check_option_keys(options, {"n_pieces"});
      return std::make_unique<LclGenerationGame>(seed, detail::int_option(options, "n_pieces", 3, 1, 20), strict);
    case GameKind::Gts: {
      detail::check_option_keys(options, {"include_sulfur"});
      chem::SampleOptions opt;
      opt.include_sulfur = detail::bool_option(options, "include_sulfur", false);
      return std::make_unique<GtsGame>(seed, opt, strict);
    }
  }
  throw ConfigError("game", "unsupported game kind");
}

inline nlohmann::json to_json(const MoveRecord& m) {
  return {{"player", std::string(to_string(m.player))}, {"move", m.move}, {"turn", m.turn}};
}

inline MoveRecord move_record_from_json(const nlohmann::json& j) {
  MoveRecord m;
  m.player = player_from_string(j.at("player").get<std::string>());
  m.move = j.at("move").get<std::string>();
  m.turn = j.at("turn").get<int>();
  return m;
}

/// A game plus its construction parameters and append-only move log.
/// Replaying the log on a fresh session reproduces the state exactly.
class GameSession {
 public:
  GameSession(GameKind kind, Options options, std::uint64_t seed)
      : kind_(kind), options_(options.is_null() ? Options::object() : std::move(options)), seed_(seed),
        game_(make_game(kind_, options_, seed_)) {}

  GameSession(const GameSession& other)
      : kind_(other.kind_), options_(other.options_), seed_(other.seed_), game_(other.game_->clone()),
        log_(other.log_) {}
  GameSession& operator=(const GameSession& other) {
    if (this != &other) *this = GameSession(other);
    return *this;
  }
  GameSession(GameSession&&) noexcept = default;
  GameSession& operator=(GameSession&&) noexcept = default;

  /// Throws ProtocolError when the game is over or it is not `player`'s turn.
  MoveOutcome apply_move(PlayerId player, std::string_view raw) {
    if (game_->status().over) throw ProtocolError("game is over");
    if (player != game_->to_move())
      throw ProtocolError("it is not " + std::string(to_string(player)) + "'s turn");
    const int turn = static_cast<int>(log_.size()) + 1;
    const auto outcome = game_->apply(player, raw);
    MoveRecord rec{player, std::string(raw), std::nullopt, turn};
    if (outcome != MoveOutcome::WrongMove) rec.parsed = game_->last_cell();
    log_.push_back(std::move(rec));
    return outcome;
  }

  GameKind kind() const { return kind_; }
  const Options& options() const { return options_; }
  std::uint64_t seed() const { return seed_; }
  const Game& game() const { return *game_; }
  Game& game() { return *game_; }
  const std::vector<MoveRecord>& log() const { return log_; }
  int turn() const { return static_cast<int>(log_.size()); }

  nlohmann::json log_json() const {
    auto out = nlohmann::json::array();
    for (const auto& m : log_) out.push_back(to_json(m));
    return out;
  }

  /// kind/options/seed/moves; enough to rebuild via `replay`.
  nlohmann::json snapshot() const {
    return {{"kind", std::string(to_string(kind_))}, {"options", options_}, {"seed", seed_}, {"moves", log_json()}};
  }

  static GameSession replay(const nlohmann::json& snap) {
    GameSession s(game_kind_from_string(snap.at("kind").get<std::string>()), snap.at("options"),
                  snap.at("seed").get<std::uint64_t>());
    for (const auto& m : snap.at("moves")) {
      const auto rec = move_record_from_json(m);
      s.apply_move(rec.player, rec.move);
    }
    return s;
  }

 private:
  GameKind kind_;
  Options options_;
  std::uint64_t seed_;
  std::unique_ptr<Game> game_;
  std::vector<MoveRecord> log_;
};

inline GameSession new_session(GameKind kind, const Options& options = {}, std::uint64_t seed = 0) {
  return GameSession(kind, options, seed);
}

}  // namespace childplay
