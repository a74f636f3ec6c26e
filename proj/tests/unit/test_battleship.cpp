#include <gtest/gtest.h>

#include "childplay/games/battleship.hpp"
#include "childplay/games/session.hpp"
#include "support/oracles.hpp"

using namespace childplay;

namespace {
std::vector<oracle::ShipCells> cells_of(const battleship::Placement& p) {
  std::vector<oracle::ShipCells> out;
  for (const auto& s : p.ships) {
    oracle::ShipCells sc;
    for (auto c : s.cells) sc.cells.emplace_back(c.row, c.col);
    out.push_back(sc);
  }
  return out;
}
}  // namespace

TEST(BattleshipFleet, ScalesWithBoard) {
  EXPECT_EQ(battleship::fleet_for_size(5), (std::vector<int>{3, 2}));
  EXPECT_EQ(battleship::fleet_for_size(10), (std::vector<int>{5, 4, 3, 2}));
  for (int n = 3; n <= 10; ++n)
    for (int len : battleship::fleet_for_size(n)) {
      EXPECT_GE(len, 2);
      EXPECT_LE(len, n);
    }
}

TEST(BattleshipPlacement, AuditSeededPlacements) {
  const std::vector<int> fleet = {3, 2};
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Rng rng(seed);
    const auto p = battleship::place_ships(5, fleet, rng);
    ASSERT_EQ(p.ships.size(), 2u);
    ASSERT_EQ(p.ships[0].cells.size(), 3u);
    ASSERT_EQ(p.ships[1].cells.size(), 2u);
    ASSERT_EQ(oracle::audit_fleet(cells_of(p), 5), "") << "seed " << seed;
    ASSERT_EQ(battleship::count(p.board, battleship::kShip), 5);
  }
}

TEST(BattleshipPlacement, HorizontalOnly) {
  const std::vector<int> fleet = {4, 3, 2};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const auto p = battleship::place_ships(8, fleet, rng, true);
    for (const auto& s : p.ships)
      for (auto c : s.cells) ASSERT_EQ(c.row, s.cells[0].row);
    ASSERT_EQ(oracle::audit_fleet(cells_of(p), 8), "");
  }
}

TEST(BattleshipPlacement, InfeasibleFleetsThrow) {
  Rng rng(1);
  const std::vector<int> too_long = {6};
  EXPECT_THROW(battleship::place_ships(5, too_long, rng), PlacementInfeasible);
  const std::vector<int> crowded = {3, 3, 3};
  EXPECT_THROW(battleship::place_ships(3, crowded, rng), PlacementInfeasible);
}

TEST(BattleshipPlacement, SpaceFreeRespectsDiagonals) {
  auto g = battleship::sea(5);
  g[2][2] = battleship::kShip;
  EXPECT_FALSE(battleship::is_space_free(g, 1, 3, 1, true));  // diagonal neighbour
  EXPECT_FALSE(battleship::is_space_free(g, 2, 3, 2, true));  // touching side
  EXPECT_TRUE(battleship::is_space_free(g, 0, 0, 2, true));
  EXPECT_FALSE(battleship::is_space_free(g, 0, 4, 2, true));  // runs off the board
}

TEST(BattleshipGame, HitsMissesAndRepeats) {
  Battleship g(5, 3);
  const auto& s = g.state();
  // Find one ship cell and one sea cell on P2's board.
  Cell ship{}, sea{};
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) (s.ships[1][r][c] == battleship::kShip ? ship : sea) = {r, c};
  auto text = [](Cell c) { return std::to_string(c.row) + " " + std::to_string(c.col); };
  EXPECT_EQ(g.apply(PlayerId::P1, text(ship)), MoveOutcome::Accepted);
  EXPECT_EQ(g.state().guesses[0][ship.row][ship.col], battleship::kHit);
  EXPECT_EQ(g.state().ships[1][ship.row][ship.col], battleship::kHit);
  EXPECT_EQ(g.apply(PlayerId::P2, "0 0"), MoveOutcome::Accepted);
  EXPECT_EQ(g.apply(PlayerId::P1, text(sea)), MoveOutcome::Accepted);
  EXPECT_EQ(g.state().guesses[0][sea.row][sea.col], battleship::kMiss);
  g.apply(PlayerId::P2, "0 1");
  EXPECT_FALSE(g.is_legal(PlayerId::P1, text(ship)));
  EXPECT_EQ(g.apply(PlayerId::P1, text(ship)), MoveOutcome::WrongMove);
  EXPECT_EQ(g.status(), GameStatus::forfeited_by(PlayerId::P1));
}

TEST(BattleshipGame, SinkingTheFleetWins) {
  Battleship g(5, 9);
  std::vector<Cell> targets;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      if (g.state().ships[1][r][c] == battleship::kShip) targets.push_back({r, c});
  ASSERT_EQ(targets.size(), 5u);
  auto p2_moves = g.legal_moves(PlayerId::P2);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto out = g.apply(PlayerId::P1, std::to_string(targets[i].row) + " " + std::to_string(targets[i].col));
    if (i + 1 == targets.size()) {
      EXPECT_EQ(out, MoveOutcome::Win);
    } else {
      ASSERT_EQ(out, MoveOutcome::Accepted);
      // P2 aims only at cells that cannot finish P1's fleet early: misses are fine, hits too.
      g.apply(PlayerId::P2, p2_moves[i]);
    }
  }
  EXPECT_EQ(g.status(), GameStatus::won_by(PlayerId::P1));
}

TEST(BattleshipGame, GamesEndWithinTurnLimit) {
  Battleship g(3, 4);
  EXPECT_EQ(g.state().turn_limit(), 18);
  // Both sides avoid ships for as long as they can.
  int shots = 0;
  while (!g.status().over) {
    const auto me = g.to_move();
    const auto& enemy = g.state().ships[index_of(opponent(me))];
    std::string pick;
    for (const auto& m : g.legal_moves(me)) {
      const int r = m[0] - '0', c = m[2] - '0';
      if (enemy[r][c] != battleship::kShip) {
        pick = m;
        break;
      }
    }
    if (pick.empty()) pick = g.legal_moves(me).front();
    g.apply(me, pick);
    ++shots;
  }
  EXPECT_LE(shots, 18);
  EXPECT_TRUE(g.status().termination == Termination::TurnLimit || g.status().termination == Termination::Win);
}

TEST(BattleshipGame, TextStateHidesOpponentShips) {
  Battleship g(5, 21);
  const auto mine = g.text_state(PlayerId::P1);
  EXPECT_EQ(mine, battleship::text_state(g.state(), PlayerId::P1));
  EXPECT_NE(mine.find("Your ships:\n  0 1 2 3 4\n0 "), std::string::npos);
  // Ship count visible equals own fleet only.
  EXPECT_EQ(std::count(mine.begin(), mine.end(), 'S'), 5);
  if (g.state().ships[0] != g.state().ships[1])
    EXPECT_EQ(mine.find(battleship::render_grid(g.state().ships[1])), std::string::npos);
}

TEST(BattleshipGame, PromptSubstitutesBoardSize) {
  Battleship g(5, 0);
  const auto p = g.intro_prompt();
  std::size_t n = 0;
  for (auto pos = p.find("from 0 to 4"); pos != std::string::npos; pos = p.find("from 0 to 4", pos + 1)) ++n;
  EXPECT_EQ(n, 2u);
}

TEST(BattleshipGame, FleetOptionOverridesScaling) {
  auto g = make_game(GameKind::Battleship, {{"board_size", 6}, {"fleet", {4, 2, 2}}}, 3);
  const auto& state = dynamic_cast<const Battleship&>(*g).state();
  for (const auto& fleet : state.fleets) {
    ASSERT_EQ(fleet.size(), 3u);
    EXPECT_EQ(fleet[0].cells.size(), 4u);
    EXPECT_EQ(fleet[2].cells.size(), 2u);
    std::vector<oracle::ShipCells> ships;
    for (const auto& s : fleet) {
      oracle::ShipCells sc;
      for (auto c : s.cells) sc.cells.emplace_back(c.row, c.col);
      ships.push_back(sc);
    }
    EXPECT_EQ(oracle::audit_fleet(ships, 6), "");
  }
  EXPECT_THROW(make_game(GameKind::Battleship, {{"fleet", {9}}}, 0), ConfigError);
  EXPECT_THROW(make_game(GameKind::Battleship, {{"fleet", "big"}}, 0), ConfigError);
  EXPECT_THROW(make_game(GameKind::Battleship, {{"board_size", 3}, {"fleet", {3, 3, 3, 3}}}, 0), ConfigError);
}
