#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "childplay/players/players.hpp"

using namespace childplay;

TEST(PlayerSpec, ParseAndValidate) {
  auto s = PlayerSpec::parse("llm:gpt-4o");
  EXPECT_EQ(s.kind, PlayerKind::Llm);
  EXPECT_EQ(s.label(), "gpt-4o");
  EXPECT_EQ(PlayerSpec::parse("random").label(), "random");
  EXPECT_THROW(PlayerSpec::parse("random:x"), ConfigError);
  EXPECT_THROW(PlayerSpec::parse("alien"), ConfigError);
  EXPECT_THROW(PlayerSpec::parse("minimax").validate(GameKind::ConnectFour), ConfigError);
  EXPECT_NO_THROW(PlayerSpec::parse("minimax").validate(GameKind::TicTacToe));
  EXPECT_THROW(PlayerSpec::parse("llm").validate(GameKind::TicTacToe), ConfigError);
  s.temperature = 2.5;
  EXPECT_THROW(s.validate(GameKind::TicTacToe), ConfigError);
  s.temperature = 0.5;
  EXPECT_THROW(s.validate(GameKind::TicTacToe, true), ConfigError);
  s.endpoint = "http://localhost:1";
  EXPECT_NO_THROW(s.validate(GameKind::TicTacToe, true));
}

TEST(PlayerSpec, JsonRoundTrip) {
  PlayerSpec s = PlayerSpec::parse("llm:m");
  s.temperature = 1.5;
  s.seed = 42;
  s.include_history = true;
  const auto back = player_spec_from_json(to_json(s));
  EXPECT_EQ(back.kind, s.kind);
  EXPECT_EQ(back.model, s.model);
  EXPECT_EQ(back.temperature, s.temperature);
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_TRUE(back.include_history);
  EXPECT_EQ(player_spec_from_json("minimax").kind, PlayerKind::Minimax);
}

TEST(RandomPlayer, UniformOverLegalMoves) {
  // First-move distribution on an empty 3x3 board: chi-square against uniform.
  std::map<std::string, int> counts;
  const int n = 18000;
  RandomPlayer p(3);
  const auto s = new_session(GameKind::TicTacToe);
  for (int i = 0; i < n; ++i) ++counts[p.choose(s, PlayerId::P1)];
  ASSERT_EQ(counts.size(), 9u);
  double chi = 0;
  for (auto& [m, c] : counts) chi += (c - n / 9.0) * (c - n / 9.0) / (n / 9.0);
  EXPECT_LT(chi, 26.1);  // p = 0.001 at 8 dof
}

TEST(RandomPlayer, OnlyLegalMovesAndDeterministic) {
  for (auto kind : {GameKind::TicTacToe, GameKind::ConnectFour, GameKind::Battleship}) {
    auto a = new_session(kind, {}, 5);
    RandomPlayer p1(1), p2(2);
    while (!a.game().status().over) {
      const auto me = a.game().to_move();
      const auto m = (me == PlayerId::P1 ? p1 : p2).choose(a, me);
      ASSERT_TRUE(a.game().is_legal(me, m)) << m;
      a.apply_move(me, m);
    }
    auto b = new_session(kind, {}, 5);
    RandomPlayer q1(1), q2(2);
    while (!b.game().status().over) {
      const auto me = b.game().to_move();
      b.apply_move(me, (me == PlayerId::P1 ? q1 : q2).choose(b, me));
    }
    EXPECT_EQ(a.log(), b.log());
  }
}

TEST(LlmPlayer, RequestCarriesModelTemperatureAndPrompt) {
  auto stub = StubTransport::constant("1 1");
  PlayerSpec spec = PlayerSpec::parse("llm:test-model");
  spec.temperature = 0.5;
  LlmPlayer p(spec, stub);
  const auto s = new_session(GameKind::TicTacToe);
  EXPECT_EQ(p.choose(s, PlayerId::P1), "1 1");
  ASSERT_TRUE(p.last_request());
  const auto body = to_json(*p.last_request());
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["temperature"], 0.5);
  ASSERT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][0]["content"], s.game().intro_prompt());
  EXPECT_EQ(body["messages"][1]["content"], s.game().text_state(PlayerId::P1) + "\nYour move:");
  EXPECT_EQ(stub->calls(), 1);
}

TEST(LlmPlayer, EmbeddedPromptIsSingleUserMessage) {
  const auto s = new_session(GameKind::LclValidity, {}, 3);
  const auto msgs = build_messages(s, PlayerId::P1);
  ASSERT_EQ(msgs.size(), 1u);
  EXPECT_EQ(msgs[0].role, "user");
  EXPECT_EQ(msgs[0].content, s.game().intro_prompt());
}

TEST(LlmPlayer, HistoryOption) {
  auto s = new_session(GameKind::TicTacToe);
  s.apply_move(PlayerId::P1, "0 0");
  s.apply_move(PlayerId::P2, "1 1");
  EXPECT_EQ(build_messages(s, PlayerId::P1)[1].content.find("Moves so far"), std::string::npos);
  const auto with = build_messages(s, PlayerId::P1, true)[1].content;
  EXPECT_EQ(with.rfind("Moves so far:\n1. P1: 0 0\n2. P2: 1 1\n", 0), 0u);
}

TEST(Transport, RetriesThenSucceeds) {
  int failures = 2;
  auto stub = std::make_shared<StubTransport>([&](const ChatRequest&) -> std::string {
    if (failures-- > 0) throw TransportError("flaky");
    return "ok";
  });
  EXPECT_EQ(complete_with_retries(*stub, {}, {3, std::chrono::milliseconds(1)}), "ok");
  EXPECT_EQ(stub->calls(), 3);
}

TEST(Transport, GivesUpAfterRetries) {
  auto stub = std::make_shared<StubTransport>([](const ChatRequest&) -> std::string { throw TransportError("down"); });
  EXPECT_THROW(complete_with_retries(*stub, {}, {2, std::chrono::milliseconds(1)}), TransportError);
  EXPECT_EQ(stub->calls(), 3);
}

TEST(Transport, FixtureReplaysInOrderThenRepeatsLast) {
  const std::vector<ChatMessage> msgs = {{"user", "hi"}};
  nlohmann::json fx = {{"entries", {{{"messages", messages_json(msgs)}, {"replies", {"a", "b"}}}}}};
  FixtureTransport t(fx);
  ChatRequest r{"m", 1.0, msgs};
  EXPECT_EQ(t.complete(r), "a");
  EXPECT_EQ(t.complete(r), "b");
  EXPECT_EQ(t.complete(r), "b");
  r.messages[0].content = "other";
  EXPECT_THROW(t.complete(r), TransportError);
  EXPECT_THROW(FixtureTransport(nlohmann::json::array()), ConfigError);
  EXPECT_THROW(FixtureTransport::from_file("/nonexistent/fixture.json"), ConfigError);
}

TEST(Transport, RecordingProducesReplayableFixture) {
  int k = 0;
  auto inner = std::make_shared<StubTransport>([&](const ChatRequest&) { return std::to_string(k++); });
  RecordingTransport rec(inner);
  ChatRequest a{"m", 1.0, {{"user", "x"}}};
  ChatRequest b{"m", 1.0, {{"user", "y"}}};
  rec.complete(a);
  rec.complete(b);
  rec.complete(a);
  FixtureTransport replay(rec.fixture());
  EXPECT_EQ(replay.complete(a), "0");
  EXPECT_EQ(replay.complete(b), "1");
  EXPECT_EQ(replay.complete(a), "2");
}

TEST(Players, SeedDerivation) {
  const auto spec = PlayerSpec::parse("random");
  auto s = new_session(GameKind::ConnectFour);
  auto a = make_player(spec, 10, PlayerId::P1, nullptr);
  auto b = make_player(spec, 10, PlayerId::P1, nullptr);
  std::string x, y;
  for (int i = 0; i < 20; ++i) x += a->choose(s, PlayerId::P1), y += b->choose(s, PlayerId::P1);
  EXPECT_EQ(x, y);
  EXPECT_THROW(make_player(PlayerSpec::parse("llm:m"), 1, PlayerId::P1, nullptr), ConfigError);
}

TEST(HumanPlayer, ShowsPromptReadsLine) {
  std::istringstream in("2 1\n");
  std::ostringstream out;
  HumanPlayer h(in, out);
  const auto s = new_session(GameKind::TicTacToe);
  EXPECT_EQ(h.choose(s, PlayerId::P1), "2 1");
  EXPECT_NE(out.str().find("Tic-Tac-Toe"), std::string::npos);
  EXPECT_THROW(h.choose(s, PlayerId::P1), TransportError);
}

TEST(ScriptedPlayer, Sequence) {
  auto p = ScriptedPlayer::sequence({"a", "b"});
  const auto s = new_session(GameKind::TicTacToe);
  EXPECT_EQ(p->choose(s, PlayerId::P1), "a");
  EXPECT_EQ(p->choose(s, PlayerId::P1), "b");
  EXPECT_THROW(p->choose(s, PlayerId::P1), ContractViolation);
}
