#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "childplay/games/connect_four.hpp"
#include "childplay/games/tictactoe.hpp"

namespace childplay::analysis {

/// Empty cells where `player` would complete a line at once.
inline std::vector<Cell> winning_cells(const ttt::Board& b, PlayerId player) {
  std::vector<Cell> out;
  for (int r = 0; r < b.size(); ++r)
    for (int c = 0; c < b.size(); ++c) {
      if (!b.empty_at(r, c)) continue;
      auto copy = b;
      copy.set(r, c, ttt::mark_of(player));
      if (ttt::check_win(copy, player)) out.push_back({r, c});
    }
  return out;
}

/// Landing cells where a `player` drop would connect four.
inline std::vector<Cell> winning_cells(const c4::Board& b, PlayerId player) {
  std::vector<Cell> out;
  for (int c = 0; c < b.cols(); ++c) {
    auto copy = b;
    if (const auto cell = copy.drop(c, c4::mark_of(player)); cell && c4::check_win(copy)) out.push_back(*cell);
  }
  return out;
}

struct MoveAssessment {
  bool missed_win = false;
  bool missed_block = false;
};

/// `played` is the cell the move occupied (nullopt for an illegal move);
/// `played_wins` whether it ended the game in the mover's favour.
inline MoveAssessment assess(const std::vector<Cell>& own_wins, const std::vector<Cell>& threats,
                             std::optional<Cell> played, bool played_wins) {
  MoveAssessment a;
  a.missed_win = !own_wins.empty() && !played_wins;
  const bool covered = played && std::all_of(threats.begin(), threats.end(), [&](Cell t) { return t == *played; });
  a.missed_block = !threats.empty() && !played_wins && !covered;
  return a;
}

inline MoveAssessment assess_move(const Game& before, PlayerId player, std::string_view raw) {
  auto after = before.clone();
  const auto outcome = after->apply(player, raw);
  std::optional<Cell> played;
  if (outcome != MoveOutcome::WrongMove) played = after->last_cell();
  const bool won = outcome == MoveOutcome::Win;
  if (const auto* t = dynamic_cast<const TicTacToe*>(&before))
    return assess(winning_cells(t->board(), player), winning_cells(t->board(), opponent(player)), played, won);
  if (const auto* c = dynamic_cast<const ConnectFour*>(&before))
    return assess(winning_cells(c->board(), player), winning_cells(c->board(), opponent(player)), played, won);
  throw ConfigError("game", "missed win/block detection supports tictactoe and connectfour only");
}

inline bool detect_missed_win(const Game& before, PlayerId player, std::string_view raw) {
  return assess_move(before, player, raw).missed_win;
}

inline bool detect_missed_block(const Game& before, PlayerId player, std::string_view raw) {
  return assess_move(before, player, raw).missed_block;
}

inline bool supports_analysis(GameKind k) { return k == GameKind::TicTacToe || k == GameKind::ConnectFour; }

}  // namespace childplay::analysis
