#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "childplay/core/errors.hpp"
#include "childplay/core/rng.hpp"

namespace childplay {

using Options = nlohmann::json;

enum class PlayerId : std::uint8_t { P1, P2 };

constexpr PlayerId opponent(PlayerId p) noexcept { return p == PlayerId::P1 ? PlayerId::P2 : PlayerId::P1; }
constexpr int index_of(PlayerId p) noexcept { return p == PlayerId::P1 ? 0 : 1; }
inline std::string_view to_string(PlayerId p) { return p == PlayerId::P1 ? "P1" : "P2"; }
inline PlayerId player_from_string(std::string_view s) {
  if (s == "P1") return PlayerId::P1;
  if (s == "P2") return PlayerId::P2;
  throw ConfigError("player", "unknown player '" + std::string(s) + "'");
}

enum class MoveOutcome : std::uint8_t { Accepted, Win, Tie, WrongMove };

inline std::string_view to_string(MoveOutcome o) {
  switch (o) {
    case MoveOutcome::Accepted: return "accepted";
    case MoveOutcome::Win: return "win";
    case MoveOutcome::Tie: return "tie";
    case MoveOutcome::WrongMove: return "wrong_move";
  }
  return "?";
}

enum class Termination : std::uint8_t { InProgress, Win, Tie, Forfeit, TurnLimit };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::InProgress: return "in_progress";
    case Termination::Win: return "win";
    case Termination::Tie: return "tie";
    case Termination::Forfeit: return "forfeit";
    case Termination::TurnLimit: return "turn_limit";
  }
  return "?";
}

/// `winner` is present iff termination is Win or Forfeit.
struct GameStatus {
  bool over = false;
  std::optional<PlayerId> winner;
  Termination termination = Termination::InProgress;

  static GameStatus running() { return {}; }
  static GameStatus won_by(PlayerId p) { return {true, p, Termination::Win}; }
  static GameStatus forfeited_by(PlayerId p) { return {true, opponent(p), Termination::Forfeit}; }
  static GameStatus tie() { return {true, std::nullopt, Termination::Tie}; }
  static GameStatus turn_limit() { return {true, std::nullopt, Termination::TurnLimit}; }

  friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct MoveRecord {
  PlayerId player = PlayerId::P1;
  std::string move;           // raw submitted text
  std::optional<Cell> parsed;  // board cell the move touched, when it has one
  int turn = 1;
  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

enum class GameKind : std::uint8_t { TicTacToe, ConnectFour, Battleship, Shapes, LclValidity, LclGeneration, Gts };

inline constexpr std::array kAllGameKinds = {GameKind::TicTacToe,   GameKind::ConnectFour,   GameKind::Battleship,
                                             GameKind::Shapes,      GameKind::LclValidity,   GameKind::LclGeneration,
                                             GameKind::Gts};

inline std::string_view to_string(GameKind k) {
  switch (k) {
    case GameKind::TicTacToe: return "tictactoe";
    case GameKind::ConnectFour: return "connectfour";
    case GameKind::Battleship: return "battleship";
    case GameKind::Shapes: return "shapes";
    case GameKind::LclValidity: return "lcl_validity";
    case GameKind::LclGeneration: return "lcl_generation";
    case GameKind::Gts: return "gts";
  }
  return "?";
}

inline GameKind game_kind_from_string(std::string_view s) {
  for (GameKind k : kAllGameKinds)
    if (to_string(k) == s) return k;
  throw ConfigError("game", "unknown game kind '" + std::string(s) + "'");
}

inline bool is_two_player(GameKind k) {
  return k == GameKind::TicTacToe || k == GameKind::ConnectFour || k == GameKind::Battleship;
}

/// Uniform contract of every engine. Engines own their state; `text_state`
/// is a pure function of it. Single-shot games (shapes, LCL, GtS) have one
/// player and end after one answer; a wrong answer there is reported as
/// Accepted with the status showing P2 (the house) as winner.
class Game {
 public:
  virtual ~Game() = default;

  virtual GameKind kind() const = 0;
  virtual void reset() = 0;
  virtual std::string text_state(PlayerId viewer) const = 0;
  virtual std::string intro_prompt() const = 0;
  virtual std::vector<std::string> legal_moves(PlayerId player) const = 0;
  /// Parses and applies `raw`. Illegal or unparsable input forfeits.
  virtual MoveOutcome apply(PlayerId player, std::string_view raw) = 0;
  /// True iff `raw` would be accepted (not a wrong move) by `apply`.
  virtual bool is_legal(PlayerId player, std::string_view raw) const = 0;
  virtual GameStatus status() const = 0;
  virtual PlayerId to_move() const = 0;
  virtual std::unique_ptr<Game> clone() const = 0;

  virtual int player_count() const { return 2; }
  /// Cell touched by the most recent accepted move, if the game has cells.
  virtual std::optional<Cell> last_cell() const { return std::nullopt; }
  /// True when `intro_prompt` already contains the full question (no separate board).
  virtual bool prompt_embeds_state() const { return false; }
  /// Uniform draw over legal moves; games with unbounded answers override.
  virtual std::string random_move(PlayerId player, Rng& rng) const {
    const auto moves = legal_moves(player);
    if (moves.empty()) throw ContractViolation("no legal moves");
    return moves[rng.index(moves.size())];
  }
};

namespace detail {

inline std::string rstrip_lines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    const bool has_nl = end != std::string_view::npos;
    if (!has_nl) end = text.size();
    std::size_t trimmed = end;
    while (trimmed > start && (text[trimmed - 1] == ' ' || text[trimmed - 1] == '\t')) --trimmed;
    out.append(text.substr(start, trimmed - start));
    if (has_nl) out.push_back('\n');
    start = end + (has_nl ? 1 : 0);
  }
  return out;
}

/// Rejects option keys not in `allowed`.
inline void check_option_keys(const Options& options, std::initializer_list<std::string_view> allowed) {
  if (options.is_null()) return;
  if (!options.is_object()) throw ConfigError("options", "options must be a JSON object");
  for (const auto& [key, value] : options.items()) {
    bool known = key == "strict" || key == "debug";
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(key, "unknown option '" + key + "'");
  }
}

inline int int_option(const Options& options, const std::string& key, int fallback, int min_value, int max_value) {
  if (options.is_null() || !options.contains(key)) return fallback;
  const auto& v = options.at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "option '" + key + "' must be an integer");
  const auto value = v.get<long long>();
  if (value < min_value || value > max_value)
    throw ConfigError(key, "option '" + key + "' must be in [" + std::to_string(min_value) + ", " +
                               std::to_string(max_value) + "], got " + std::to_string(value));
  return static_cast<int>(value);
}

inline bool bool_option(const Options& options, const std::string& key, bool fallback) {
  if (options.is_null() || !options.contains(key)) return fallback;
  const auto& v = options.at(key);
  if (!v.is_boolean()) throw ConfigError(key, "option '" + key + "' must be a boolean");
  return v.get<bool>();
}

}  // namespace detail
}  // namespace childplay
