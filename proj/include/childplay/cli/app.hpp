#pragma once

#include <csignal>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "childplay/harness/export.hpp"
#include "childplay/harness/metrics.hpp"
#include "childplay/harness/series.hpp"
#include "childplay/lcl/lcl.hpp"
#include "childplay/players/http_transport.hpp"
#include "childplay/service/server.hpp"

namespace childplay::cli {

enum ExitCode : int { kOk = 0, kConfig = 2, kTransport = 3, kPort = 4, kEmpty = 5 };

namespace fs = std::filesystem;

inline int default_workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct TransportFlags {
  std::string mode = "live";
  std::string fixture;
  std::string stub_reply = "0 0";
  std::string endpoint;
  std::string record;
};

inline std::shared_ptr<Transport> make_transport(const TransportFlags& f) {
  if (f.mode == "stub") return StubTransport::constant(f.stub_reply);
  if (f.mode == "fixture") {
    if (f.fixture.empty()) throw ConfigError("fixture", "--transport fixture requires --fixture <file>");
    return FixtureTransport::from_file(f.fixture);
  }
  if (f.mode == "live") {
    if (!f.endpoint.empty()) {
      const char* key = std::getenv("CHILDPLAY_API_KEY");
      return std::make_shared<HttpChatTransport>(f.endpoint, key ? key : "");
    }
    return HttpChatTransport::from_env();
  }
  throw ConfigError("transport", "transport must be live, fixture or stub");
}

inline Options parse_options(const std::string& text) {
  if (text.empty()) return Options::object();
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("options", "--options must be a JSON object");
  return j;
}

inline std::string tally_text(const SeriesResult& r) {
  std::ostringstream ss;
  const long n = std::max(1, r.n_games);
  auto line = [&](const std::string& label, long v) {
    const auto s = binomial_stats(v, n);
    ss << "  " << label << ": " << v << " (" << format_fixed(s.percent()) << "% +/- " << format_fixed(s.sd_percent())
       << ")\n";
  };
  ss << to_string(r.game) << ": " << r.p1 << " vs " << r.p2 << ", temperature " << format_fixed(r.temperature, 1)
     << ", " << r.n_games << " games\n";
  line("P1 wins", r.p1_wins);
  line("P2 wins", r.p2_wins);
  line("Ties", r.ties);
  if (r.game == GameKind::Battleship) line("Turn limit", r.turn_limits);
  ss << "  P1 wrong moves: " << r.p1_wrong_moves << "\n  P2 wrong moves: " << r.p2_wrong_moves << "\n";
  if (analysis::supports_analysis(r.game))
    ss << "  Missed wins: " << r.missed_wins << "\n  Missed blocks: " << r.missed_blocks << "\n";
  ss << "  Average moves: " << format_fixed(r.avg_moves()) << "\n";
  if (r.game == GameKind::Gts) {
    ss << "  Correct/incorrect/invalid: " << r.gts.correct << "/" << r.gts.incorrect << "/" << r.gts.invalid << "\n";
    const auto acc = r.gts.accuracy();
    ss << "  Accuracy: " << (acc ? format_fixed(*acc) + "%" : std::string("n/a")) << "\n";
  }
  return ss.str();
}

/// Table-1 style row: model, temperature, win, lose, tie, wrong moves.
inline std::string matrix_row(const SeriesResult& r) {
  const double n = std::max(1, r.n_games);
  return "| " + r.p1 + " | " + format_fixed(r.temperature, 1) + " | " + format_fixed(100.0 * r.p1_wins / n) + " | " +
         format_fixed(100.0 * r.p2_wins / n) + " | " + format_fixed(100.0 * (r.ties + r.turn_limits) / n) + " | " +
         std::to_string(r.p1_wrong_moves) + " | " + std::to_string(r.missed_wins) + " | " +
         std::to_string(r.missed_blocks) + " |\n";
}

inline std::string matrix_header(GameKind g) {
  return "## " + std::string(to_string(g)) +
         "\n\n| Model | Temperature | Win Rate (%) | Lose Rate (%) | Tie Rate (%) | Wrong Moves | Missed Wins | "
         "Missed Blocks |\n|---|---|---|---|---|---|---|---|\n";
}

// ---------------------------------------------------------------- run

struct RunFlags {
  std::string game;
  std::string p1 = "random";
  std::string p2 = "random";
  int n = 100;
  std::optional<double> temperature;
  std::uint64_t seed = 0;
  std::string out = "results";
  std::string model;
  std::string options;
  int workers = default_workers();
  int max_retries = 0;
  TransportFlags transport;
};

inline SeriesConfig series_config(const RunFlags& f) {
  SeriesConfig cfg;
  cfg.game = game_kind_from_string(f.game);
  cfg.options = parse_options(f.options);
  cfg.p1 = PlayerSpec::parse(f.p1);
  cfg.p2 = PlayerSpec::parse(f.p2);
  if (!f.model.empty() && cfg.p1.kind == PlayerKind::Llm) cfg.p1.model = f.model;
  if (cfg.p1.kind == PlayerKind::Llm && !f.transport.endpoint.empty()) cfg.p1.endpoint = f.transport.endpoint;
  cfg.n_games = f.n;
  cfg.temperature = f.temperature;
  cfg.master_seed = f.seed;
  cfg.workers = f.transport.mode == "fixture" ? 1 : f.workers;
  cfg.max_retries = f.max_retries;
  return cfg;
}

inline bool uses_llm(const SeriesConfig& c) {
  return c.p1.kind == PlayerKind::Llm || (is_two_player(c.game) && c.p2.kind == PlayerKind::Llm);
}

inline void write_fixture(const std::string& path, const std::shared_ptr<Transport>& t) {
  if (path.empty()) return;
  if (auto rec = std::dynamic_pointer_cast<RecordingTransport>(t)) write_file_atomic(path, rec->fixture().dump(2) + "\n");
}

inline int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = series_config(f);
  cfg.validate();
  std::shared_ptr<Transport> transport;
  if (uses_llm(cfg)) {
    transport = make_transport(f.transport);
    if (!f.transport.record.empty()) transport = std::make_shared<RecordingTransport>(transport);
  }
  const auto dir = result_dir(f.out, cfg.game, cfg.effective_p1().label(), cfg.reported_temperature());
  try {
    const auto r = run_series(cfg, transport);
    export_results(r, dir);
    write_fixture(f.transport.record, transport);
    out << tally_text(r) << "results: " << dir.string() << "\n";
    return kOk;
  } catch (const SeriesAborted& e) {
    export_results(e.partial(), dir);
    write_fixture(f.transport.record, transport);
    err << "transport failure: " << e.what() << "\npartial results (" << e.partial().n_games << " games) in "
        << dir.string() << "\n";
    return kTransport;
  }
}

// ---------------------------------------------------------------- matrix

struct MatrixCell {
  GameKind game;
  PlayerSpec p1;
  double temperature;
};

inline int cmd_matrix(const std::string& manifest_path, bool resume, int workers, std::ostream& out,
                      std::ostream& err) {
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(read_file(manifest_path));
  } catch (const std::exception& e) {
    throw ConfigError("manifest", std::string("cannot read manifest: ") + e.what());
  }
  if (!m.is_object()) throw ConfigError("manifest", "manifest must be a JSON object");
  const auto games = m.value("games", std::vector<std::string>{});
  if (games.empty()) throw ConfigError("games", "manifest needs a non-empty 'games' list");
  const auto temperatures = m.value("temperatures", std::vector<double>{0.0, 0.5, 1.0, 1.5});
  if (!m.contains("models") || !m.at("models").is_array() || m.at("models").empty())
    throw ConfigError("models", "manifest needs a non-empty 'models' list");
  const fs::path root = m.value("output_dir", std::string("results"));
  TransportFlags tf;
  tf.mode = m.value("transport", std::string("live"));
  tf.fixture = m.value("fixture", std::string());
  tf.stub_reply = m.value("stub_reply", tf.stub_reply);
  tf.endpoint = m.value("endpoint", std::string());
  const PlayerSpec p2 = m.contains("p2") ? player_spec_from_json(m.at("p2")) : PlayerSpec{};
  const int n = m.value("n_games", 100);
  const std::uint64_t seed = m.value("seed", std::uint64_t{0});
  const int max_retries = m.value("max_retries", 0);
  const auto options = m.value("options", nlohmann::json::object());

  std::vector<SeriesConfig> cells;
  for (const auto& g : games) {
    const auto kind = game_kind_from_string(g);
    for (const auto& model : m.at("models")) {
      for (double t : temperatures) {
        SeriesConfig c;
        c.game = kind;
        c.options = options.contains(g) ? options.at(g) : Options::object();
        c.p1 = model.is_string() && model.get<std::string>().find(':') == std::string::npos &&
                       model.get<std::string>() != "random" && model.get<std::string>() != "minimax"
                   ? PlayerSpec::parse("llm:" + model.get<std::string>())
                   : player_spec_from_json(model);
        c.p2 = p2;
        c.n_games = n;
        c.temperature = t;
        c.master_seed = seed;
        c.max_retries = max_retries;
        c.validate();
        cells.push_back(std::move(c));
      }
    }
  }
  bool any_llm = false;
  for (const auto& c : cells) any_llm = any_llm || uses_llm(c);
  const auto transport = any_llm ? make_transport(tf) : nullptr;

  std::vector<std::optional<SeriesResult>> results(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    while (!failed) {
      const std::size_t i = next++;
      if (i >= cells.size()) return;
      const auto& c = cells[i];
      const auto dir = result_dir(root, c.game, c.effective_p1().label(), c.reported_temperature());
      if (resume && fs::exists(dir / "result.json")) {
        results[i] = load_results(dir / "result.json");
        continue;
      }
      try {
        results[i] = run_series(c, transport);
        export_results(*results[i], dir);
      } catch (const SeriesAborted& e) {
        export_results(e.partial(), dir / "partial");
        errors[i] = e.what();
        failed = true;
      }
    }
  };
  // Fixture replay is order-sensitive for repeated prompts; keep it sequential.
  const int pool_size = tf.mode == "fixture" && any_llm ? 1 : std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < pool_size; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::string summary;
  for (const auto& g : games) {
    const auto kind = game_kind_from_string(g);
    summary += matrix_header(kind);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].game == kind && results[i]) summary += matrix_row(*results[i]);
    summary += "\n";
  }
  write_file_atomic(root / "summary.md", summary);
  out << summary;
  for (const auto& e : errors)
    if (!e.empty()) {
      err << "transport failure: " << e << "\n";
      return kTransport;
    }
  return kOk;
}

// ---------------------------------------------------------------- report

/// Best headline metric per game per model across temperatures.
inline std::map<std::string, std::map<std::string, double, std::less<>>> collect_best(const fs::path& root) {
  std::map<std::string, std::map<std::string, double, std::less<>>> best;
  if (!fs::is_directory(root)) return best;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().filename() != "result.json") continue;
    if (entry.path().parent_path().filename() == "partial") continue;
    const auto r = load_results(entry.path());
    auto& slot = best[r.p1];
    const auto key = std::string(to_string(r.game));
    const double v = headline_metric(r);
    if (!slot.contains(key) || v > slot[key]) slot[key] = v;
  }
  return best;
}

inline int cmd_report(const std::string& results, const std::string& scores, const std::string& out_dir,
                      std::ostream& out, std::ostream& err) {
  std::map<std::string, std::map<std::string, double, std::less<>>> best;
  if (!scores.empty()) {
    const auto j = nlohmann::json::parse(read_file(scores), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("scores", "scores file must map model -> {game: value}");
    for (const auto& [model, games] : j.items())
      for (const auto& [game, v] : games.items()) best[model][game] = v.get<double>();
  } else {
    best = collect_best(results);
  }
  if (best.empty()) {
    err << "no results found in " << (scores.empty() ? results : scores) << "\n";
    return kEmpty;
  }
  std::string table = "| Model |";
  for (auto k : kAllGameKinds) table += " " + std::string(to_string(k)) + " |";
  table += " Combined |\n|---|";
  for (std::size_t i = 0; i <= kAllGameKinds.size(); ++i) table += "---|";
  table += "\n";
  std::string csv = "model";
  for (auto k : kAllGameKinds) csv += "," + std::string(to_string(k));
  csv += ",combined\n";
  std::vector<std::pair<std::string, double>> bars;
  for (const auto& [model, games] : best) {
    table += "| " + model + " |";
    csv += csv_escape(model);
    for (auto k : kAllGameKinds) {
      const auto it = games.find(to_string(k));
      table += " " + (it == games.end() ? std::string("-") : format_fixed(it->second)) + " |";
      csv += "," + (it == games.end() ? std::string() : format_fixed(it->second));
    }
    std::string combined = "-";
    try {
      const double c = combined_score(games);
      combined = format_fixed(c);
      bars.emplace_back(model, c);
    } catch (const ConfigError&) {
    }
    table += " " + combined + " |\n";
    csv += "," + (combined == "-" ? std::string() : combined) + "\n";
  }
  const fs::path dir = out_dir.empty() ? fs::path(results.empty() ? "." : results) : fs::path(out_dir);
  write_file_atomic(dir / "combined.md", table);
  write_file_atomic(dir / "combined.csv", csv);
  write_file_atomic(dir / "combined.svg", bar_chart_svg(bars, "Combined score (%)"));
  out << table;
  return kOk;
}

// ---------------------------------------------------------------- lcl-dataset

inline int cmd_lcl_dataset(int n, int pieces, std::uint64_t seed, const std::string& path, std::ostream& out) {
  if (n < 2 || n % 2) throw ConfigError("n", "--n must be an even number >= 2");
  if (pieces < 2) throw ConfigError("pieces", "--pieces must be at least 2");
  std::string csv = "experiment_no,expected_validity,construct\n";
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const bool valid = i < n / 2;
    const auto c = valid ? lcl::generate_valid_construct(pieces, rng) : lcl::generate_invalid_construct(pieces, rng).construct;
    csv += std::to_string(i) + "," + (valid ? "valid" : "invalid") + "," + csv_escape(lcl::format_construct(c)) + "\n";
  }
  if (path.empty()) {
    out << csv;
  } else {
    write_file_atomic(path, csv);
    out << "wrote " << n << " constructs to " << path << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- serve

inline std::atomic<service::Server*>& active_server() {
  static std::atomic<service::Server*> s{nullptr};
  return s;
}

extern "C" inline void childplay_stop_server(int) {
  if (auto* s = active_server().load()) s->stop();
}

inline int cmd_serve(const std::string& host, int port, const std::string& static_dir, const std::string& store,
                     const TransportFlags& tf, bool enable_llm, std::ostream& out, std::ostream& err) {
  service::ServiceConfig cfg;
  if (!store.empty()) cfg.store_path = store;
  if (enable_llm) cfg.llm_transport = make_transport(tf);
  auto api = std::make_shared<service::ChildPlayApi>(cfg);
  service::Server server(api, static_dir.empty() ? std::nullopt : std::optional<fs::path>(static_dir));
  const int bound = server.bind(host, port);
  if (bound < 0) {
    err << "cannot bind " << host << ":" << port << "\n";
    return kPort;
  }
  active_server() = &server;
  std::signal(SIGINT, childplay_stop_server);
  std::signal(SIGTERM, childplay_stop_server);
  out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
  server.listen();
  active_server() = nullptr;
  out << "stopped\n";
  return kOk;
}

// ---------------------------------------------------------------- entry

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Game-based benchmark harness for language models"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Play a series of games");
  run_cmd->add_option("--game", run.game, "Game kind")->required();
  run_cmd->add_option("--p1", run.p1, "random | minimax | human | llm[:model]")->capture_default_str();
  run_cmd->add_option("--p2", run.p2, "Opponent player")->capture_default_str();
  run_cmd->add_option("--n", run.n, "Number of games")->capture_default_str();
  run_cmd->add_option("--temperature", run.temperature, "Sampling temperature for an llm P1");
  run_cmd->add_option("--seed", run.seed, "Master seed (game i uses seed + i)")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output root")->capture_default_str();
  run_cmd->add_option("--model", run.model, "Model name for an llm P1");
  run_cmd->add_option("--options", run.options, "Game options as a JSON object");
  run_cmd->add_option("--workers", run.workers, "Parallel games")->capture_default_str();
  run_cmd->add_option("--max-retries", run.max_retries, "Re-prompts allowed after an illegal move")->capture_default_str();
  run_cmd->add_option("--transport", run.transport.mode, "live | fixture | stub")->capture_default_str();
  run_cmd->add_option("--fixture", run.transport.fixture, "Fixture file for --transport fixture");
  run_cmd->add_option("--stub-reply", run.transport.stub_reply, "Constant reply for --transport stub");
  run_cmd->add_option("--endpoint", run.transport.endpoint, "Chat completions base URL");
  run_cmd->add_option("--record", run.transport.record, "Write the exchanged transcript as a fixture file");

  std::string manifest;
  bool resume = false;
  int matrix_workers = default_workers();
  auto* matrix_cmd = app.add_subcommand("matrix", "Run a models x temperatures x games grid");
  matrix_cmd->add_option("--manifest", manifest, "Manifest JSON file")->required();
  matrix_cmd->add_flag("--resume", resume, "Skip cells that already have results");
  matrix_cmd->add_option("--workers", matrix_workers, "Cells run in parallel")->capture_default_str();

  std::string host = "0.0.0.0";
  int port = 8080;
  std::string static_dir;
  std::string store;
  bool llm_opponents = false;
  TransportFlags serve_tf;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--static", static_dir, "Directory of web client files");
  serve_cmd->add_option("--store", store, "JSON file for session persistence");
  serve_cmd->add_flag("--llm-opponents", llm_opponents, "Allow llm opponents");
  serve_cmd->add_option("--transport", serve_tf.mode, "Transport for llm opponents")->capture_default_str();
  serve_cmd->add_option("--fixture", serve_tf.fixture);
  serve_cmd->add_option("--stub-reply", serve_tf.stub_reply);
  serve_cmd->add_option("--endpoint", serve_tf.endpoint);

  std::string results_root = "results";
  std::string scores;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Combined-score table and plots");
  report_cmd->add_option("--results", results_root, "Results root")->capture_default_str();
  report_cmd->add_option("--scores", scores, "JSON {model: {game: percent}} instead of scanning results");
  report_cmd->add_option("--out", report_out, "Output directory (default: results root)");

  int lcl_n = 800;
  int lcl_pieces = 3;
  std::uint64_t lcl_seed = 0;
  std::string lcl_out;
  auto* lcl_cmd = app.add_subcommand("lcl-dataset", "Write a balanced LCL validity dataset");
  lcl_cmd->add_option("--n", lcl_n)->capture_default_str();
  lcl_cmd->add_option("--pieces", lcl_pieces)->capture_default_str();
  lcl_cmd->add_option("--seed", lcl_seed)->capture_default_str();
  lcl_cmd->add_option("--out", lcl_out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run, out, err);
    if (*matrix_cmd) return cmd_matrix(manifest, resume, matrix_workers, out, err);
    if (*serve_cmd) return cmd_serve(host, port, static_dir, store, serve_tf, llm_opponents, out, err);
    if (*report_cmd) return cmd_report(results_root, scores, report_out, out, err);
    if (*lcl_cmd) return cmd_lcl_dataset(lcl_n, lcl_pieces, lcl_seed, lcl_out, out);
  } catch (const ConfigError& e) {
    err << "configuration error (" << e.key() << "): " << e.what() << "\n";
    return kConfig;
  } catch (const TransportError& e) {
    err << "transport failure: " << e.what() << "\n";
    return kTransport;
  } catch (const nlohmann::json::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}

}  // namespace childplay::cli
