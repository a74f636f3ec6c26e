#pragma once

#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "childplay/chem/gts.hpp"
#include "childplay/games/session.hpp"
#include "childplay/harness/analysis.hpp"
#include "childplay/players/players.hpp"

namespace childplay {

struct SeriesConfig {
  GameKind game = GameKind::TicTacToe;
  Options options = Options::object();
  PlayerSpec p1;
  PlayerSpec p2;
  int n_games = 100;
  /// Applied to P1 when P1 is an llm.
  std::optional<double> temperature;
  std::uint64_t master_seed = 0;
  int workers = 1;
  /// Extra attempts granted after an illegal move before it forfeits.
  int max_retries = 0;
  RetryPolicy transport_retry;

  PlayerSpec effective_p1() const {
    auto s = p1;
    if (temperature && s.kind == PlayerKind::Llm) s.temperature = *temperature;
    return s;
  }

  double reported_temperature() const { return temperature.value_or(p1.kind == PlayerKind::Llm ? p1.temperature : 0.0); }

  void validate(bool endpoint_required = false) const {
    if (n_games < 1) throw ConfigError("n", "n_games must be at least 1");
    if (workers < 1) throw ConfigError("workers", "workers must be at least 1");
    if (max_retries < 0) throw ConfigError("max_retries", "max_retries must be non-negative");
    effective_p1().validate(game, endpoint_required);
    if (is_two_player(game)) p2.validate(game, endpoint_required);
    // Surfaces bad option keys/values before any game runs.
    (void)make_game(game, options, master_seed);
  }
};

/// One game: transcript, wrong moves per side, move log, outcome and
/// whatever the game kind scores beyond win/loss.
struct GameLog {
  int index = 0;
  std::uint64_t seed = 0;
  nlohmann::json messages = nlohmann::json::array();
  std::array<int, 2> wrong_moves{0, 0};
  std::vector<MoveRecord> moves;
  GameStatus status;
  int accepted_moves = 0;
  int missed_wins = 0;
  int missed_blocks = 0;
  std::vector<Cell> p1_cells;  // accepted P1 moves, for the heatmap
  std::optional<std::string> answer;
  std::optional<Judgement> judgement;
  std::optional<bool> expected_validity;
  std::optional<chem::GtsScore> gts;

  friend bool operator==(const GameLog&, const GameLog&) = default;
};

using Heatmap = std::vector<std::vector<long>>;

struct SeriesResult {
  GameKind game = GameKind::TicTacToe;
  std::string p1;
  std::string p2;
  double temperature = 0.0;
  std::uint64_t master_seed = 0;
  int n_games = 0;
  long p1_wins = 0;
  long p2_wins = 0;
  long ties = 0;
  long turn_limits = 0;
  long p1_wrong_moves = 0;
  long p2_wrong_moves = 0;
  long missed_wins = 0;
  long missed_blocks = 0;
  long total_moves = 0;
  Heatmap heatmap;
  chem::GtsTally gts;
  std::vector<GameLog> games;

  double avg_moves() const { return n_games ? static_cast<double>(total_moves) / n_games : 0.0; }
  long heatmap_total() const {
    long t = 0;
    for (const auto& row : heatmap)
      for (long v : row) t += v;
    return t;
  }

  friend bool operator==(const SeriesResult& a, const SeriesResult& b) {
    return a.game == b.game && a.p1 == b.p1 && a.p2 == b.p2 && a.temperature == b.temperature &&
           a.master_seed == b.master_seed && a.n_games == b.n_games && a.p1_wins == b.p1_wins &&
           a.p2_wins == b.p2_wins && a.ties == b.ties && a.turn_limits == b.turn_limits &&
           a.p1_wrong_moves == b.p1_wrong_moves && a.p2_wrong_moves == b.p2_wrong_moves &&
           a.missed_wins == b.missed_wins && a.missed_blocks == b.missed_blocks && a.total_moves == b.total_moves &&
           a.heatmap == b.heatmap && a.gts.correct == b.gts.correct && a.gts.incorrect == b.gts.incorrect &&
           a.gts.invalid == b.gts.invalid && a.gts.similarity_sum == b.gts.similarity_sum &&
           a.gts.distance_sum == b.gts.distance_sum && a.games == b.games;
  }
};

/// Heatmap shape for a game kind/options: board cells, or empty.
inline Heatmap empty_heatmap(const Game& g) {
  if (const auto* t = dynamic_cast<const TicTacToe*>(&g))
    return Heatmap(t->board().size(), std::vector<long>(t->board().size(), 0));
  if (const auto* c = dynamic_cast<const ConnectFour*>(&g))
    return Heatmap(c->board().rows(), std::vector<long>(c->board().cols(), 0));
  if (const auto* b = dynamic_cast<const Battleship*>(&g))
    return Heatmap(b->state().size, std::vector<long>(b->state().size, 0));
  return {};
}

inline void accumulate_heatmap(Heatmap& h, Cell c) {
  if (c.row < 0 || c.row >= static_cast<int>(h.size()) || c.col < 0 || c.col >= static_cast<int>(h[c.row].size()))
    throw ContractViolation("heatmap cell out of range");
  ++h[c.row][c.col];
}

inline void tally(SeriesResult& r, const GameLog& g) {
  if (g.status.termination == Termination::Tie) {
    ++r.ties;
  } else if (g.status.termination == Termination::TurnLimit) {
    ++r.turn_limits;
  } else if (g.status.winner == PlayerId::P1) {
    ++r.p1_wins;
  } else if (g.status.winner == PlayerId::P2) {
    ++r.p2_wins;
  }
  r.p1_wrong_moves += g.wrong_moves[0];
  r.p2_wrong_moves += g.wrong_moves[1];
  r.missed_wins += g.missed_wins;
  r.missed_blocks += g.missed_blocks;
  r.total_moves += g.accepted_moves;
  for (const auto& c : g.p1_cells) accumulate_heatmap(r.heatmap, c);
  if (g.gts) r.gts.add(*g.gts);
}

using PlayerFactory = std::function<std::unique_ptr<Player>(const PlayerSpec&, std::uint64_t seed, PlayerId side)>;

inline PlayerFactory transport_factory(std::shared_ptr<Transport> transport, RetryPolicy retry = {}) {
  return [transport, retry](const PlayerSpec& s, std::uint64_t seed, PlayerId side) {
    return make_player(s, seed, side, transport, retry);
  };
}

/// Exactly count/2 valid and count/2 invalid slots (odd counts get one
/// extra valid), shuffled by `seed`.
inline std::vector<bool> balanced_schedule(int count, std::uint64_t seed) {
  std::vector<bool> slots(static_cast<std::size_t>(count), false);
  for (int i = 0; i < (count + 1) / 2; ++i) slots[static_cast<std::size_t>(i)] = true;
  std::vector<char> tmp(slots.begin(), slots.end());
  Rng rng(derive_seed(seed, 0x1c1ULL));
  rng.shuffle(tmp);
  return {tmp.begin(), tmp.end()};
}

/// Options for game `index`. LCL validity series get a balanced
/// valid/invalid split unless the caller pinned "valid".
inline Options game_options(const SeriesConfig& cfg, int index) {
  Options o = cfg.options.is_null() ? Options::object() : cfg.options;
  if (cfg.game == GameKind::LclValidity && !o.contains("valid"))
    o["valid"] = static_cast<bool>(balanced_schedule(cfg.n_games, cfg.master_seed)[static_cast<std::size_t>(index)]);
  return o;
}

/// Plays game `index` of the series (seed = master_seed + index).
inline GameLog play_one_game(const SeriesConfig& cfg, int index, const PlayerFactory& factory) {
  GameLog log;
  log.index = index;
  log.seed = cfg.master_seed + static_cast<std::uint64_t>(index);
  GameSession session(cfg.game, game_options(cfg, index), log.seed);
  std::array<std::unique_ptr<Player>, 2> players{factory(cfg.effective_p1(), log.seed, PlayerId::P1),
                                                 is_two_player(cfg.game) ? factory(cfg.p2, log.seed, PlayerId::P2)
                                                                         : nullptr};
  const bool analyse = analysis::supports_analysis(cfg.game);
  constexpr int kMoveGuard = 100'000;
  for (int step = 0; !session.game().status().over; ++step) {
    if (step > kMoveGuard) throw ContractViolation("game did not terminate");
    const PlayerId me = session.game().to_move();
    Player& player = *players[index_of(me)];
    int retries_left = cfg.max_retries;
    while (true) {
      const std::string raw = player.choose(session, me);
      if (const auto* llm = dynamic_cast<const LlmPlayer*>(&player); llm && llm->last_request()) {
        log.messages.push_back({{"player", std::string(to_string(me))},
                                {"request", messages_json(llm->last_request()->messages)},
                                {"response", raw}});
      }
      if (retries_left > 0 && !session.game().is_legal(me, raw)) {
        ++log.wrong_moves[index_of(me)];
        --retries_left;
        continue;
      }
      std::optional<analysis::MoveAssessment> flags;
      if (analyse && me == PlayerId::P1 && session.game().is_legal(me, raw))
        flags = analysis::assess_move(session.game(), me, raw);
      const auto outcome = session.apply_move(me, raw);
      if (outcome == MoveOutcome::WrongMove) {
        ++log.wrong_moves[index_of(me)];
      } else {
        ++log.accepted_moves;
        if (me == PlayerId::P1)
          if (auto cell = session.game().last_cell()) log.p1_cells.push_back(*cell);
        if (flags) {
          log.missed_wins += flags->missed_win;
          log.missed_blocks += flags->missed_block;
        }
      }
      break;
    }
  }
  log.moves = session.log();
  // Only the wire fields {player, move, turn} are kept; cells live in p1_cells.
  for (auto& m : log.moves) m.parsed.reset();
  log.status = session.game().status();
  if (const auto* ss = dynamic_cast<const SingleShotGame*>(&session.game())) {
    log.answer = ss->answer();
    log.judgement = ss->judgement();
  }
  if (const auto* v = dynamic_cast<const LclValidityGame*>(&session.game())) log.expected_validity = v->expected_validity();
  if (const auto* g = dynamic_cast<const GtsGame*>(&session.game())) log.gts = g->score();
  return log;
}

/// Carries whatever games finished before a transport failure.
class SeriesAborted : public TransportError {
 public:
  SeriesAborted(const std::string& what, SeriesResult partial)
      : TransportError(what), partial_(std::move(partial)) {}
  const SeriesResult& partial() const { return partial_; }

 private:
  SeriesResult partial_;
};

inline SeriesResult empty_result(const SeriesConfig& cfg) {
  SeriesResult r;
  r.game = cfg.game;
  r.p1 = cfg.effective_p1().label();
  r.p2 = is_two_player(cfg.game) ? cfg.p2.label() : "-";
  r.temperature = cfg.reported_temperature();
  r.master_seed = cfg.master_seed;
  r.heatmap = empty_heatmap(*make_game(cfg.game, cfg.options, cfg.master_seed));
  return r;
}

/// Runs all games, fanning out over `cfg.workers` threads. Logs are merged
/// in index order, so output is independent of scheduling.
inline SeriesResult run_series(const SeriesConfig& cfg, const PlayerFactory& factory) {
  cfg.validate();
  std::vector<std::optional<GameLog>> logs(static_cast<std::size_t>(cfg.n_games));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    while (!failed) {
      const int i = next++;
      if (i >= cfg.n_games) return;
      try {
        logs[static_cast<std::size_t>(i)] = play_one_game(cfg, i, factory);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const int workers = std::min(cfg.workers, cfg.n_games);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  SeriesResult r = empty_result(cfg);
  for (auto& l : logs) {
    if (!l) continue;
    tally(r, *l);
    r.games.push_back(std::move(*l));
  }
  r.n_games = static_cast<int>(r.games.size());
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const TransportError& e) {
      throw SeriesAborted(e.what(), std::move(r));
    }
  }
  return r;
}

inline SeriesResult run_series(const SeriesConfig& cfg, std::shared_ptr<Transport> transport = nullptr) {
  return run_series(cfg, transport_factory(std::move(transport), cfg.transport_retry));
}

}  // namespace childplay
