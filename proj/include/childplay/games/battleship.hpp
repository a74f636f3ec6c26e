#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "childplay/core/game.hpp"
#include "childplay/core/rng.hpp"
#include "childplay/games/tictactoe.hpp"
#include "childplay/players/move_parser.hpp"
#include "childplay/players/prompts.hpp"

namespace childplay {
namespace battleship {

inline constexpr char kSea = '~';
inline constexpr char kShip = 'S';
inline constexpr char kHit = 'X';
inline constexpr char kMiss = 'O';
inline constexpr int kPlacementAttempts = 10'000;
inline constexpr std::array kBaseFleet = {5, 4, 3, 3, 2};

using Grid = std::vector<std::string>;

inline Grid sea(int size) { return Grid(static_cast<std::size_t>(size), std::string(static_cast<std::size_t>(size), kSea)); }

/// Ship lengths for an n x n board: classic fleet scaled by n/10 (half up),
/// clamped to [2, n], duplicates removed. 10 -> {5,4,3,2}, 5 -> {3,2}.
inline std::vector<int> fleet_for_size(int size) {
  if (size < 2) throw ContractViolation("battleship board must be at least 2x2");
  std::vector<int> out;
  for (int base : kBaseFleet) {
    int len = (base * size + 5) / 10;
    len = std::clamp(len, 2, size);
    if (std::find(out.begin(), out.end(), len) == out.end()) out.push_back(len);
  }
  return out;
}

struct Ship {
  std::vector<Cell> cells;
};

/// All cells in bounds and none of them, nor any of their 8 neighbours, hold a ship.
inline bool is_space_free(const Grid& g, int row, int col, int length, bool horizontal) {
  const int n = static_cast<int>(g.size());
  for (int k = 0; k < length; ++k) {
    const int r = horizontal ? row : row + k;
    const int c = horizontal ? col + k : col;
    if (r < 0 || c < 0 || r >= n || c >= n) return false;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = r + dr;
        const int cc = c + dc;
        if (rr >= 0 && cc >= 0 && rr < n && cc < n && g[rr][cc] == kShip) return false;
      }
  }
  return true;
}

struct Placement {
  Grid board;
  std::vector<Ship> ships;
};

inline Placement place_ships(int size, std::span<const int> fleet, Rng& rng, bool horizontal_only = false) {
  Placement out{sea(size), {}};
  for (int length : fleet) {
    if (length < 1 || length > size)
      throw PlacementInfeasible("ship of length " + std::to_string(length) + " does not fit a " +
                                std::to_string(size) + "x" + std::to_string(size) + " board");
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      const bool horizontal = horizontal_only || rng.bernoulli(0.5);
      const int row = static_cast<int>(rng.uniform_int(0, size - (horizontal ? 1 : length)));
      const int col = static_cast<int>(rng.uniform_int(0, size - (horizontal ? length : 1)));
      if (!is_space_free(out.board, row, col, length, horizontal)) continue;
      Ship ship;
      for (int k = 0; k < length; ++k) {
        const Cell cell{horizontal ? row : row + k, horizontal ? col + k : col};
        out.board[cell.row][cell.col] = kShip;
        ship.cells.push_back(cell);
      }
      out.ships.push_back(std::move(ship));
      placed = true;
    }
    if (!placed)
      throw PlacementInfeasible("could not place ship of length " + std::to_string(length) + " after " +
                                std::to_string(kPlacementAttempts) + " attempts");
  }
  return out;
}

inline int count(const Grid& g, char c) {
  int n = 0;
  for (const auto& row : g) n += static_cast<int>(std::count(row.begin(), row.end(), c));
  return n;
}

/// Both players' ship boards and guess boards.
struct State {
  int size = 5;
  std::array<Grid, 2> ships;
  std::array<Grid, 2> guesses;
  std::array<std::vector<Ship>, 2> fleets;
  int shots = 0;

  int turn_limit() const { return 2 * size * size; }
};

/// Fires at (row, col) on `player`'s opponent. Out of bounds or repeated: WrongMove.
inline MoveOutcome guess(State& s, PlayerId player, int row, int col) {
  auto& mine = s.guesses[index_of(player)];
  auto& theirs = s.ships[index_of(opponent(player))];
  if (row < 0 || col < 0 || row >= s.size || col >= s.size || mine[row][col] != kSea) return MoveOutcome::WrongMove;
  ++s.shots;
  if (theirs[row][col] == kShip) {
    theirs[row][col] = kHit;
    mine[row][col] = kHit;
    if (count(theirs, kShip) == 0) return MoveOutcome::Win;
  } else {
    theirs[row][col] = kMiss;
    mine[row][col] = kMiss;
  }
  return MoveOutcome::Accepted;
}

inline std::string render_grid(const Grid& g) {
  std::string out = " ";
  for (std::size_t c = 0; c < g.size(); ++c) out += " " + std::to_string(c);
  out += '\n';
  for (std::size_t r = 0; r < g.size(); ++r) {
    out += std::to_string(r);
    for (char ch : g[r]) {
      out += ' ';
      out += ch;
    }
    out += '\n';
  }
  return out;
}

/// What `viewer` may see: own ships (with hits) and own guesses.
inline std::string text_state(const State& s, PlayerId viewer) {
  return "Your ships:\n" + render_grid(s.ships[index_of(viewer)]) + "Your guesses:\n" +
         render_grid(s.guesses[index_of(viewer)]);
}

}  // namespace battleship

class Battleship final : public Game {
 public:
  /// An empty `fleet` means fleet_for_size(size).
  Battleship(int size, std::uint64_t seed, bool horizontal_only = false, bool strict = false,
             std::vector<int> fleet = {})
      : seed_(seed), horizontal_only_(horizontal_only), strict_(strict), fleet_(std::move(fleet)) {
    state_.size = size;
    reset();
  }

  GameKind kind() const override { return GameKind::Battleship; }

  void reset() override {
    Rng rng(seed_);
    const auto fleet = fleet_.empty() ? battleship::fleet_for_size(state_.size) : fleet_;
    for (int p = 0; p < 2; ++p) {
      auto placement = battleship::place_ships(state_.size, fleet, rng, horizontal_only_);
      state_.ships[p] = std::move(placement.board);
      state_.fleets[p] = std::move(placement.ships);
      state_.guesses[p] = battleship::sea(state_.size);
    }
    state_.shots = 0;
    to_move_ = PlayerId::P1;
    status_ = GameStatus::running();
    last_.reset();
  }

  std::string text_state(PlayerId viewer) const override { return battleship::text_state(state_, viewer); }

  std::string intro_prompt() const override {
    return prompts::render_prompt(prompts::kBattleship,
                                  {{"board_size", std::to_string(state_.size)},
                                   {"board_size_minus_1", std::to_string(state_.size - 1)}});
  }

  std::vector<std::string> legal_moves(PlayerId player) const override {
    std::vector<std::string> out;
    if (status_.over) return out;
    const auto& g = state_.guesses[index_of(player)];
    for (int r = 0; r < state_.size; ++r)
      for (int c = 0; c < state_.size; ++c)
        if (g[r][c] == battleship::kSea) out.push_back(std::to_string(r) + " " + std::to_string(c));
    return out;
  }

  bool is_legal(PlayerId player, std::string_view raw) const override { return target(player, raw).has_value(); }

  MoveOutcome apply(PlayerId player, std::string_view raw) override {
    detail::require_turn(status_, to_move_, player);
    const auto cell = target(player, raw);
    if (!cell) {
      status_ = GameStatus::forfeited_by(player);
      return MoveOutcome::WrongMove;
    }
    const auto outcome = battleship::guess(state_, player, cell->row, cell->col);
    last_ = cell;
    if (outcome == MoveOutcome::Win) {
      status_ = GameStatus::won_by(player);
      return outcome;
    }
    if (state_.shots >= state_.turn_limit()) {
      status_ = GameStatus::turn_limit();
      return outcome;
    }
    to_move_ = opponent(player);
    return outcome;
  }

  GameStatus status() const override { return status_; }
  PlayerId to_move() const override { return to_move_; }
  std::unique_ptr<Game> clone() const override { return std::make_unique<Battleship>(*this); }
  std::optional<Cell> last_cell() const override { return last_; }

  const battleship::State& state() const { return state_; }

 private:
  std::optional<Cell> target(PlayerId player, std::string_view raw) const {
    const auto parsed = parse_move(GameKind::Battleship, raw, strict_);
    if (!parsed) return std::nullopt;
    const auto [r, c] = std::get<CellMove>(*parsed);
    if (r < 0 || c < 0 || r >= state_.size || c >= state_.size) return std::nullopt;
    if (state_.guesses[index_of(player)][r][c] != battleship::kSea) return std::nullopt;
    return Cell{r, c};
  }

  std::uint64_t seed_;
  bool horizontal_only_;
  std::vector<int> fleet_;
  bool strict_;
  battleship::State state_;
  PlayerId to_move_ = PlayerId::P1;
  GameStatus status_;
  std::optional<Cell> last_;
};

}  // namespace childplay
