#include <gtest/gtest.h>

#include <cmath>

#include "childplay/harness/lcl_bench.hpp"
#include "childplay/harness/series.hpp"
#include "support/oracles.hpp"

using namespace childplay;

namespace {
SeriesConfig ttt_config(const char* p1, const char* p2, int n, std::uint64_t seed = 0) {
  SeriesConfig c;
  c.game = GameKind::TicTacToe;
  c.p1 = PlayerSpec::parse(p1);
  c.p2 = PlayerSpec::parse(p2);
  c.n_games = n;
  c.master_seed = seed;
  return c;
}

// Answers LCL validity prompts by checking the construct with the oracle checker.
PlayerFactory lcl_oracle_factory() {
  return [](const PlayerSpec&, std::uint64_t, PlayerId) -> std::unique_ptr<Player> {
    return std::make_unique<ScriptedPlayer>([](const GameSession& s, PlayerId) {
      const auto& g = dynamic_cast<const LclValidityGame&>(s.game());
      std::vector<oracle::Brick> bricks;
      for (const auto& p : g.construct()) bricks.push_back({p.x, p.y});
      return std::string(oracle::lcl_judge(bricks) == 0 ? "valid" : "invalid");
    });
  };
}
}  // namespace

TEST(Series, CountsAddUp) {
  const auto r = run_series(ttt_config("random", "random", 300, 4));
  EXPECT_EQ(r.n_games, 300);
  EXPECT_EQ(r.p1_wins + r.p2_wins + r.ties + r.turn_limits, 300);
  EXPECT_EQ(r.p1_wrong_moves + r.p2_wrong_moves, 0);
  long p1_moves = 0;
  for (const auto& g : r.games) {
    ASSERT_EQ(g.seed, 4u + static_cast<std::uint64_t>(g.index));
    for (const auto& m : g.moves) p1_moves += m.player == PlayerId::P1;
  }
  EXPECT_EQ(r.heatmap_total(), p1_moves);
  EXPECT_GT(r.avg_moves(), 5.0);
  EXPECT_LE(r.avg_moves(), 9.0);
}

TEST(Series, DeterministicAcrossWorkerCounts) {
  auto cfg = ttt_config("random", "random", 200, 9);
  const auto a = run_series(cfg);
  cfg.workers = 4;
  const auto b = run_series(cfg);
  EXPECT_TRUE(a == b);
  cfg.master_seed = 10;
  EXPECT_FALSE(a == run_series(cfg));
}

TEST(Series, RandomVsRandomMatchesExactProbability) {
  const auto exact = oracle::uniform_play_from_empty();
  const int n = 4000;
  const auto r = run_series(ttt_config("random", "random", n, 77));
  const double sigma = std::sqrt(exact.first * (1 - exact.first) / n);
  EXPECT_NEAR(static_cast<double>(r.p1_wins) / n, exact.first, 3 * sigma);
}

TEST(Series, MinimaxNeverLoses) {
  const auto r = run_series(ttt_config("minimax", "random", 300, 1));
  EXPECT_EQ(r.p2_wins, 0);
  EXPECT_GT(r.p1_wins, 280);
}

TEST(Series, StubLlmWrongMovesForfeit) {
  auto cfg = ttt_config("llm:stub", "random", 20);
  const auto r = run_series(cfg, StubTransport::constant("no idea"));
  EXPECT_EQ(r.p2_wins, 20);
  EXPECT_EQ(r.p1_wrong_moves, 20);
  EXPECT_EQ(r.p1, "stub");
  ASSERT_EQ(r.games[0].messages.size(), 1u);
  EXPECT_EQ(r.games[0].messages[0]["response"], "no idea");
}

TEST(Series, RetriesCountEachFailedAttempt) {
  auto cfg = ttt_config("llm:stub", "random", 1);
  cfg.max_retries = 2;
  int k = 0;
  auto stub = std::make_shared<StubTransport>([&](const ChatRequest&) { return k++ % 3 == 2 ? "1 1" : "bogus"; });
  const auto r = run_series(cfg, stub);
  // Turn one: two failures, then "1 1" lands. Turn two: "1 1" is now taken,
  // so all three attempts fail and the game is forfeited.
  EXPECT_EQ(r.p1_wrong_moves, 5);
  EXPECT_EQ(k, 6);
  EXPECT_EQ(r.games[0].moves[0].move, "1 1");
  EXPECT_EQ(r.games[0].status, GameStatus::forfeited_by(PlayerId::P1));
}

TEST(Series, TransportFailureAbortsWithPartial) {
  auto cfg = ttt_config("llm:stub", "random", 10);
  cfg.transport_retry = {0, std::chrono::milliseconds(0)};
  int calls = 0;
  auto stub = std::make_shared<StubTransport>([&](const ChatRequest&) -> std::string {
    if (++calls > 3) throw TransportError("down");
    return "bad";
  });
  try {
    run_series(cfg, stub);
    FAIL();
  } catch (const SeriesAborted& e) {
    EXPECT_EQ(e.partial().n_games, 3);
    EXPECT_EQ(e.partial().p2_wins, 3);
  }
}

TEST(Series, ConfigErrorsSurfaceEarly) {
  auto cfg = ttt_config("minimax", "random", 1);
  cfg.game = GameKind::ConnectFour;
  EXPECT_THROW(run_series(cfg), ConfigError);
  auto bad = ttt_config("random", "random", 0);
  EXPECT_THROW(run_series(bad), ConfigError);
  auto opts = ttt_config("random", "random", 1);
  opts.options = {{"bogus", 1}};
  EXPECT_THROW(run_series(opts), ConfigError);
}

TEST(Series, TemperatureOverrideAppliesToLlm) {
  auto cfg = ttt_config("llm:m", "random", 1);
  cfg.temperature = 1.5;
  double seen = -1;
  auto stub = std::make_shared<StubTransport>([&](const ChatRequest& r) {
    seen = r.temperature;
    return std::string("0 0");
  });
  const auto r = run_series(cfg, stub);
  EXPECT_EQ(seen, 1.5);
  EXPECT_EQ(r.temperature, 1.5);
}

TEST(Series, ConnectFourHeatmapIsLandingCells) {
  SeriesConfig cfg;
  cfg.game = GameKind::ConnectFour;
  cfg.p1 = PlayerSpec::parse("llm:m");
  cfg.p2 = PlayerSpec::parse("random");
  cfg.n_games = 1;
  // Always column 3: the first drop lands on the bottom row.
  const auto r = run_series(cfg, StubTransport::constant("3"));
  ASSERT_EQ(r.heatmap.size(), 7u);
  EXPECT_EQ(r.heatmap[6][3], 1);
  long col3 = 0;
  for (const auto& row : r.heatmap) col3 += row[3];
  EXPECT_EQ(col3, r.heatmap_total());
}

TEST(BalancedSchedule, ExactHalves) {
  for (int n : {2, 10, 800, 801}) {
    const auto s = balanced_schedule(n, 3);
    EXPECT_EQ(std::count(s.begin(), s.end(), true), (n + 1) / 2);
  }
  EXPECT_NE(balanced_schedule(100, 1), balanced_schedule(100, 2));
}

TEST(LclBench, OracleScoresPerfectRandomNearHalf) {
  const auto oracle_run = run_lcl_validity_benchmark(PlayerSpec::parse("llm:oracle"), lcl_oracle_factory(), 200, 5);
  const auto t = lcl_tally(oracle_run);
  EXPECT_EQ(t.correct, 200);
  long valid = 0;
  for (const auto& g : oracle_run.games) valid += *g.expected_validity;
  EXPECT_EQ(valid, 100);
  const auto rnd = run_lcl_validity_benchmark(PlayerSpec::parse("random"), transport_factory(nullptr), 400, 5);
  const auto rt = lcl_tally(rnd);
  EXPECT_EQ(rt.unparsable, 0);
  EXPECT_NEAR(rt.stat().p, 0.5, 0.1);
  EXPECT_THROW(run_lcl_validity_benchmark(PlayerSpec::parse("random"), transport_factory(nullptr), 3, 1), ConfigError);
}

TEST(LclBench, GenerationWithStub) {
  const auto r = run_lcl_generation_benchmark(PlayerSpec::parse("llm:m"),
                                              transport_factory(StubTransport::constant("((0, 0, 'red'), (2, 1, 'blue'), (0, 2, 'green'))")),
                                              10, 3, 0);
  EXPECT_EQ(lcl_tally(r).correct, 10);
  const auto wrong = run_lcl_generation_benchmark(PlayerSpec::parse("llm:m"),
                                                  transport_factory(StubTransport::constant("((0, 0, 'red'))")), 10, 3, 0);
  EXPECT_EQ(lcl_tally(wrong).incorrect, 10);
}

TEST(Series, SingleShotKindsRunWithRandom) {
  for (auto kind : {GameKind::Shapes, GameKind::LclValidity, GameKind::LclGeneration, GameKind::Gts}) {
    SeriesConfig cfg;
    cfg.game = kind;
    cfg.n_games = 20;
    const auto r = run_series(cfg);
    EXPECT_EQ(r.n_games, 20) << to_string(kind);
    EXPECT_EQ(r.p1_wins + r.p2_wins, 20) << to_string(kind);
    if (kind == GameKind::Gts) EXPECT_EQ(r.gts.total(), 20);
  }
}
