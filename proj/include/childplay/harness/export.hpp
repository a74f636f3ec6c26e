#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "childplay/harness/metrics.hpp"
#include "childplay/harness/series.hpp"

namespace childplay {

namespace fs = std::filesystem;

/// Writes via a sibling temp file and rename, so readers never see partial output.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string format_fixed(double v, int digits = 2) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

inline nlohmann::json to_json(const GameStatus& s) {
  nlohmann::json j = {{"over", s.over}, {"termination", std::string(to_string(s.termination))}};
  j["winner"] = s.winner ? nlohmann::json(std::string(to_string(*s.winner))) : nlohmann::json(nullptr);
  return j;
}

inline Termination termination_from_string(std::string_view s) {
  for (auto t : {Termination::InProgress, Termination::Win, Termination::Tie, Termination::Forfeit,
                 Termination::TurnLimit})
    if (to_string(t) == s) return t;
  throw ParseError(0, "unknown termination '" + std::string(s) + "'");
}

inline GameStatus status_from_json(const nlohmann::json& j) {
  GameStatus s;
  s.over = j.at("over").get<bool>();
  s.termination = termination_from_string(j.at("termination").get<std::string>());
  if (!j.at("winner").is_null()) s.winner = player_from_string(j.at("winner").get<std::string>());
  return s;
}

inline nlohmann::json to_json(const chem::GtsScore& s) {
  return {{"correct", s.correct},
          {"valid", s.valid},
          {"chemical_similarity", s.chemical_similarity},
          {"string_distance", s.string_distance}};
}

inline chem::GtsScore gts_score_from_json(const nlohmann::json& j) {
  chem::GtsScore s;
  s.correct = j.at("correct").get<bool>();
  s.valid = j.at("valid").get<bool>();
  s.chemical_similarity = j.at("chemical_similarity").get<double>();
  s.string_distance = j.at("string_distance").get<std::size_t>();
  return s;
}

inline Judgement judgement_from_string(std::string_view s) {
  for (auto j : {Judgement::Correct, Judgement::Incorrect, Judgement::Invalid})
    if (to_string(j) == s) return j;
  throw ParseError(0, "unknown judgement '" + std::string(s) + "'");
}

inline nlohmann::json to_json(const GameLog& g) {
  auto moves = nlohmann::json::array();
  for (const auto& m : g.moves) moves.push_back(to_json(m));
  auto cells = nlohmann::json::array();
  for (const auto& c : g.p1_cells) cells.push_back({c.row, c.col});
  nlohmann::json j = {{"index", g.index},
                      {"seed", g.seed},
                      {"messages", g.messages},
                      {"P1 Wrong Moves", g.wrong_moves[0]},
                      {"P2 Wrong Moves", g.wrong_moves[1]},
                      {"moves", moves},
                      {"status", to_json(g.status)},
                      {"accepted_moves", g.accepted_moves},
                      {"missed_wins", g.missed_wins},
                      {"missed_blocks", g.missed_blocks},
                      {"p1_cells", cells}};
  if (g.answer) j["answer"] = *g.answer;
  if (g.judgement) j["judgement"] = std::string(to_string(*g.judgement));
  if (g.expected_validity) j["expected_validity"] = *g.expected_validity;
  if (g.gts) j["gts"] = to_json(*g.gts);
  return j;
}

inline GameLog game_log_from_json(const nlohmann::json& j) {
  GameLog g;
  g.index = j.at("index").get<int>();
  g.seed = j.at("seed").get<std::uint64_t>();
  g.messages = j.at("messages");
  g.wrong_moves = {j.at("P1 Wrong Moves").get<int>(), j.at("P2 Wrong Moves").get<int>()};
  for (const auto& m : j.at("moves")) g.moves.push_back(move_record_from_json(m));
  g.status = status_from_json(j.at("status"));
  g.accepted_moves = j.at("accepted_moves").get<int>();
  g.missed_wins = j.at("missed_wins").get<int>();
  g.missed_blocks = j.at("missed_blocks").get<int>();
  for (const auto& c : j.at("p1_cells")) g.p1_cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  if (j.contains("answer")) g.answer = j.at("answer").get<std::string>();
  if (j.contains("judgement")) g.judgement = judgement_from_string(j.at("judgement").get<std::string>());
  if (j.contains("expected_validity")) g.expected_validity = j.at("expected_validity").get<bool>();
  if (j.contains("gts")) g.gts = gts_score_from_json(j.at("gts"));
  return g;
}

inline nlohmann::json to_json(const SeriesResult& r) {
  auto games = nlohmann::json::array();
  for (const auto& g : r.games) games.push_back(to_json(g));
  nlohmann::json j = {{"game", std::string(to_string(r.game))},
                      {"P1", r.p1},
                      {"P2", r.p2},
                      {"temperature", r.temperature},
                      {"master_seed", r.master_seed},
                      {"n_games", r.n_games},
                      {"P1 Wins", r.p1_wins},
                      {"P2 Wins", r.p2_wins},
                      {"Ties", r.ties},
                      {"Turn Limit Draws", r.turn_limits},
                      {"P1 Wrong Moves", r.p1_wrong_moves},
                      {"P2 Wrong Moves", r.p2_wrong_moves},
                      {"Missed Wins", r.missed_wins},
                      {"Missed Blocks", r.missed_blocks},
                      {"Total Moves", r.total_moves},
                      {"Average Moves", r.avg_moves()},
                      {"Heatmap", r.heatmap},
                      {"Games", games}};
  if (r.game == GameKind::Gts) {
    j["GtS"] = {{"correct", r.gts.correct},
                {"incorrect", r.gts.incorrect},
                {"invalid", r.gts.invalid},
                {"similarity_sum", r.gts.similarity_sum},
                {"distance_sum", r.gts.distance_sum}};
  }
  return j;
}

inline SeriesResult series_result_from_json(const nlohmann::json& j) {
  SeriesResult r;
  r.game = game_kind_from_string(j.at("game").get<std::string>());
  r.p1 = j.at("P1").get<std::string>();
  r.p2 = j.at("P2").get<std::string>();
  r.temperature = j.at("temperature").get<double>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.n_games = j.at("n_games").get<int>();
  r.p1_wins = j.at("P1 Wins").get<long>();
  r.p2_wins = j.at("P2 Wins").get<long>();
  r.ties = j.at("Ties").get<long>();
  r.turn_limits = j.at("Turn Limit Draws").get<long>();
  r.p1_wrong_moves = j.at("P1 Wrong Moves").get<long>();
  r.p2_wrong_moves = j.at("P2 Wrong Moves").get<long>();
  r.missed_wins = j.at("Missed Wins").get<long>();
  r.missed_blocks = j.at("Missed Blocks").get<long>();
  r.total_moves = j.at("Total Moves").get<long>();
  r.heatmap = j.at("Heatmap").get<Heatmap>();
  if (j.contains("GtS")) {
    const auto& g = j.at("GtS");
    r.gts.correct = g.at("correct").get<long>();
    r.gts.incorrect = g.at("incorrect").get<long>();
    r.gts.invalid = g.at("invalid").get<long>();
    r.gts.similarity_sum = g.at("similarity_sum").get<double>();
    r.gts.distance_sum = g.at("distance_sum").get<double>();
  }
  for (const auto& g : j.at("Games")) r.games.push_back(game_log_from_json(g));
  return r;
}

/// Headline percentage for a series: win rate for board games, share of
/// correct answers for shapes/LCL, accuracy over valid answers for GtS.
inline double headline_metric(const SeriesResult& r) {
  if (r.game == GameKind::Gts) return r.gts.accuracy().value_or(0.0);
  return r.n_games ? 100.0 * static_cast<double>(r.p1_wins) / r.n_games : 0.0;
}

inline std::string summary_csv_header() {
  return "game,p1,p2,temperature,n_games,p1_wins,p2_wins,ties,turn_limits,p1_wrong_moves,p2_wrong_moves,"
         "missed_wins,missed_blocks,avg_moves,p1_win_rate,p1_win_sd\n";
}

inline std::string summary_csv_row(const SeriesResult& r) {
  const auto stat = binomial_stats(r.p1_wins, std::max(1, r.n_games));
  std::ostringstream ss;
  ss << to_string(r.game) << ',' << r.p1 << ',' << r.p2 << ',' << format_fixed(r.temperature, 1) << ',' << r.n_games
     << ',' << r.p1_wins << ',' << r.p2_wins << ',' << r.ties << ',' << r.turn_limits << ',' << r.p1_wrong_moves
     << ',' << r.p2_wrong_moves << ',' << r.missed_wins << ',' << r.missed_blocks << ','
     << format_fixed(r.avg_moves()) << ',' << format_fixed(stat.percent()) << ',' << format_fixed(stat.sd_percent())
     << '\n';
  return ss.str();
}

inline std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// One row per LCL experiment.
inline std::string lcl_csv(const SeriesResult& r) {
  std::string out = "temperature,model,experiment_no,expected_validity,answer,correct\n";
  for (const auto& g : r.games) {
    out += format_fixed(r.temperature, 1) + "," + csv_escape(r.p1) + "," + std::to_string(g.index) + ",";
    out += g.expected_validity ? (*g.expected_validity ? "valid" : "invalid") : "";
    out += "," + csv_escape(g.answer.value_or("")) + ",";
    out += g.judgement == Judgement::Correct ? "true" : "false";
    out += "\n";
  }
  return out;
}

inline std::string gts_csv_header() {
  return "model,temperature,correct,incorrect,invalid,avg_similarity,avg_string_distance,accuracy\n";
}

inline std::string gts_csv_row(const SeriesResult& r) {
  const auto acc = r.gts.accuracy();
  return csv_escape(r.p1) + "," + format_fixed(r.temperature, 1) + "," + std::to_string(r.gts.correct) + "," +
         std::to_string(r.gts.incorrect) + "," + std::to_string(r.gts.invalid) + "," +
         format_fixed(r.gts.avg_similarity(), 4) + "," + format_fixed(r.gts.avg_string_distance(), 4) + "," +
         (acc ? format_fixed(*acc) : std::string("")) + "\n";
}

/// Plain-text grayscale image, one pixel per board cell.
inline std::string heatmap_pgm(const Heatmap& h) {
  long peak = 0;
  for (const auto& row : h)
    for (long v : row) peak = std::max(peak, v);
  const std::size_t width = h.empty() ? 0 : h.front().size();
  std::string out = "P2\n" + std::to_string(width) + " " + std::to_string(h.size()) + "\n255\n";
  for (const auto& row : h) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += std::to_string(peak ? row[c] * 255 / peak : 0);
    }
    out += '\n';
  }
  return out;
}

inline std::string heatmap_svg(const Heatmap& h, int cell = 40) {
  long peak = 0;
  for (const auto& row : h)
    for (long v : row) peak = std::max(peak, v);
  const int rows = static_cast<int>(h.size());
  const int cols = rows ? static_cast<int>(h.front().size()) : 0;
  std::ostringstream ss;
  ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell << "\" height=\"" << rows * cell
     << "\">\n";
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const long v = h[r][c];
      const int shade = peak ? static_cast<int>(255 - v * 200 / peak) : 255;
      ss << "<rect x=\"" << c * cell << "\" y=\"" << r * cell << "\" width=\"" << cell << "\" height=\"" << cell
         << "\" fill=\"rgb(255," << shade << "," << shade << ")\" stroke=\"#999\"/>"
         << "<text x=\"" << c * cell + cell / 2 << "\" y=\"" << r * cell + cell / 2 + 4
         << "\" font-size=\"12\" text-anchor=\"middle\">" << v << "</text>\n";
    }
  ss << "</svg>\n";
  return ss.str();
}

/// Horizontal bar chart of labelled percentages.
inline std::string bar_chart_svg(const std::vector<std::pair<std::string, double>>& bars, const std::string& title) {
  const int bar_h = 22;
  const int label_w = 180;
  const int plot_w = 400;
  const int height = 40 + bar_h * static_cast<int>(bars.size());
  std::ostringstream ss;
  ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << label_w + plot_w + 60 << "\" height=\"" << height
     << "\">\n<text x=\"10\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const int y = 30 + static_cast<int>(i) * bar_h;
    const double v = std::clamp(bars[i].second, 0.0, 100.0);
    ss << "<text x=\"10\" y=\"" << y + 15 << "\" font-size=\"12\">" << bars[i].first << "</text>"
       << "<rect x=\"" << label_w << "\" y=\"" << y + 3 << "\" width=\"" << format_fixed(v * plot_w / 100.0, 1)
       << "\" height=\"" << bar_h - 6 << "\" fill=\"#4a7ab5\"/>"
       << "<text x=\"" << label_w + plot_w + 5 << "\" y=\"" << y + 15 << "\" font-size=\"12\">"
       << format_fixed(bars[i].second) << "</text>\n";
  }
  ss << "</svg>\n";
  return ss.str();
}

inline std::string rates_svg(const SeriesResult& r) {
  const double n = std::max(1, r.n_games);
  return bar_chart_svg({{"P1 wins", 100.0 * r.p1_wins / n},
                        {"P2 wins", 100.0 * r.p2_wins / n},
                        {"Ties", 100.0 * r.ties / n},
                        {"Turn limit", 100.0 * r.turn_limits / n},
                        {"P1 wrong moves", 100.0 * r.p1_wrong_moves / n}},
                       std::string(to_string(r.game)) + " " + r.p1 + " vs " + r.p2 + " t=" +
                           format_fixed(r.temperature, 1));
}

/// result.json, summary.csv, rates.svg, plus heatmap or per-kind CSVs.
inline void export_results(const SeriesResult& r, const fs::path& dir) {
  write_file_atomic(dir / "result.json", to_json(r).dump(2) + "\n");
  write_file_atomic(dir / "summary.csv", summary_csv_header() + summary_csv_row(r));
  write_file_atomic(dir / "rates.svg", rates_svg(r));
  if (!r.heatmap.empty()) {
    write_file_atomic(dir / "heatmap.pgm", heatmap_pgm(r.heatmap));
    write_file_atomic(dir / "heatmap.svg", heatmap_svg(r.heatmap));
  }
  if (r.game == GameKind::LclValidity || r.game == GameKind::LclGeneration) write_file_atomic(dir / "lcl.csv", lcl_csv(r));
  if (r.game == GameKind::Gts) write_file_atomic(dir / "gts.csv", gts_csv_header() + gts_csv_row(r));
}

inline SeriesResult load_results(const fs::path& result_json) {
  return series_result_from_json(nlohmann::json::parse(read_file(result_json)));
}

/// results/<game>/<model>/<temperature>/
inline fs::path result_dir(const fs::path& root, GameKind game, const std::string& model, double temperature) {
  return root / std::string(to_string(game)) / model / format_fixed(temperature, 1);
}

}  // namespace childplay
