#include <gtest/gtest.h>

#include "childplay/games/battleship.hpp"
#include "childplay/harness/analysis.hpp"
#include "support/oracles.hpp"

using namespace childplay;

namespace {
std::string ttt_cells(const TicTacToe& g) {
  std::string s;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s += g.board().at(r, c) == 'X' ? 'X' : g.board().at(r, c) == 'O' ? 'O' : ' ';
  return s;
}

std::vector<std::string> c4_rows(const ConnectFour& g) {
  std::vector<std::string> rows;
  for (int r = 0; r < g.board().rows(); ++r) {
    std::string row;
    for (int c = 0; c < g.board().cols(); ++c) row += g.board().at(r, c) == 'X' ? 'X' : g.board().at(r, c) == 'O' ? 'O' : '.';
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Analysis, NamedTicTacToeCases) {
  TicTacToe g;
  // O threatens the top row; X plays an unrelated corner.
  for (auto m : {"1 1", "0 0", "2 2", "0 1"}) g.apply(g.to_move(), m);
  EXPECT_TRUE(analysis::detect_missed_block(g, PlayerId::P1, "2 0"));
  EXPECT_FALSE(analysis::detect_missed_block(g, PlayerId::P1, "0 2"));
  TicTacToe w;
  // X can win on the diagonal while O also threatens; winning beats blocking.
  for (auto m : {"0 0", "0 1", "1 1", "0 2", "1 0", "1 2"}) w.apply(w.to_move(), m);
  EXPECT_FALSE(analysis::detect_missed_block(w, PlayerId::P1, "2 2"));
  EXPECT_FALSE(analysis::detect_missed_win(w, PlayerId::P1, "2 2"));
  EXPECT_TRUE(analysis::detect_missed_win(w, PlayerId::P1, "2 1"));
}

TEST(Analysis, TicTacToeMatchesOnePlyOracle) {
  Rng rng(100);
  int positions = 0, wins = 0, blocks = 0;
  while (positions < 10000) {
    TicTacToe g;
    const int depth = static_cast<int>(rng.uniform_int(0, 7));
    for (int k = 0; k < depth && !g.status().over; ++k) g.apply(g.to_move(), g.random_move(g.to_move(), rng));
    if (g.status().over) continue;
    const auto me = g.to_move();
    const auto move = g.random_move(me, rng);
    const int played = (move[0] - '0') * 3 + (move[2] - '0');
    const auto expected = oracle::ttt_one_ply(ttt_cells(g), ttt::mark_of(me), played);
    const auto got = analysis::assess_move(g, me, move);
    ASSERT_EQ(got.missed_win, expected.missed_win) << ttt_cells(g) << " " << move;
    ASSERT_EQ(got.missed_block, expected.missed_block) << ttt_cells(g) << " " << move;
    wins += expected.missed_win;
    blocks += expected.missed_block;
    ++positions;
  }
  EXPECT_GT(wins, 500);
  EXPECT_GT(blocks, 500);
}

TEST(Analysis, ConnectFourMatchesOnePlyOracle) {
  Rng rng(101);
  int positions = 0, wins = 0, blocks = 0;
  while (positions < 10000) {
    ConnectFour g;
    const int depth = static_cast<int>(rng.uniform_int(0, 40));
    for (int k = 0; k < depth && !g.status().over; ++k) g.apply(g.to_move(), g.random_move(g.to_move(), rng));
    if (g.status().over) continue;
    const auto me = g.to_move();
    const auto move = g.random_move(me, rng);
    const auto expected = oracle::c4_one_ply(c4_rows(g), c4::mark_of(me), std::stoi(move));
    const auto got = analysis::assess_move(g, me, move);
    ASSERT_EQ(got.missed_win, expected.missed_win) << move;
    ASSERT_EQ(got.missed_block, expected.missed_block) << move;
    wins += expected.missed_win;
    blocks += expected.missed_block;
    ++positions;
  }
  EXPECT_GT(wins, 200);
  EXPECT_GT(blocks, 200);
}

TEST(Analysis, UnsupportedKindThrows) {
  Battleship b(5, 1);
  EXPECT_THROW(analysis::assess_move(b, PlayerId::P1, "0 0"), ConfigError);
  EXPECT_FALSE(analysis::supports_analysis(GameKind::Battleship));
}
