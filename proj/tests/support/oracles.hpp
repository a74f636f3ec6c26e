#pragma once
// Independent reference implementations used only by tests. None of these
// call into the library code they check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---- tic-tac-toe: 8 explicit lines on a 9-char string ('X', 'O', ' ')

inline constexpr std::array<std::array<int, 3>, 8> kLines = {{{0, 1, 2},
                                                              {3, 4, 5},
                                                              {6, 7, 8},
                                                              {0, 3, 6},
                                                              {1, 4, 7},
                                                              {2, 5, 8},
                                                              {0, 4, 8},
                                                              {2, 4, 6}}};

inline bool ttt_line(const std::string& cells, char m) {
  for (const auto& l : kLines)
    if (cells[l[0]] == m && cells[l[1]] == m && cells[l[2]] == m) return true;
  return false;
}

inline bool ttt_full(const std::string& cells) { return cells.find(' ') == std::string::npos; }

/// Exact P(first player wins), P(second wins), P(tie) under uniform play by both.
struct Outcome3 {
  double first = 0, second = 0, tie = 0;
};

inline Outcome3 uniform_play(std::string& cells, char to_move, std::map<std::pair<std::string, char>, Outcome3>& memo) {
  auto key = std::make_pair(cells, to_move);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Outcome3 out;
  if (ttt_line(cells, 'X')) {
    out.first = 1;
  } else if (ttt_line(cells, 'O')) {
    out.second = 1;
  } else if (ttt_full(cells)) {
    out.tie = 1;
  } else {
    int moves = 0;
    for (char c : cells) moves += c == ' ';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i] != ' ') continue;
      cells[i] = to_move;
      const auto sub = uniform_play(cells, to_move == 'X' ? 'O' : 'X', memo);
      cells[i] = ' ';
      out.first += sub.first / moves;
      out.second += sub.second / moves;
      out.tie += sub.tie / moves;
    }
  }
  memo[key] = out;
  return out;
}

inline Outcome3 uniform_play_from_empty() {
  std::string cells(9, ' ');
  std::map<std::pair<std::string, char>, Outcome3> memo;
  return uniform_play(cells, 'X', memo);
}

// ---- connect four: full-grid window scan

inline bool c4_any_four(const std::vector<std::string>& rows, char m) {
  const int R = static_cast<int>(rows.size());
  const int C = static_cast<int>(rows[0].size());
  const int dirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c)
      for (auto& d : dirs) {
        bool all = true;
        for (int k = 0; k < 4 && all; ++k) {
          const int rr = r + k * d[0];
          const int cc = c + k * d[1];
          all = rr >= 0 && rr < R && cc >= 0 && cc < C && rows[rr][cc] == m;
        }
        if (all) return true;
      }
  return false;
}

// ---- battleship placement audit

struct ShipCells {
  std::vector<std::pair<int, int>> cells;
};

/// Straight, contiguous, in bounds; no two ships closer than Chebyshev distance 2.
inline std::string audit_fleet(const std::vector<ShipCells>& ships, int size) {
  for (const auto& s : ships) {
    if (s.cells.empty()) return "empty ship";
    bool same_row = true, same_col = true;
    for (auto [r, c] : s.cells) {
      if (r < 0 || c < 0 || r >= size || c >= size) return "out of bounds";
      same_row = same_row && r == s.cells[0].first;
      same_col = same_col && c == s.cells[0].second;
    }
    if (!same_row && !same_col) return "bent ship";
    std::vector<int> coords;
    for (auto [r, c] : s.cells) coords.push_back(same_row ? c : r);
    std::sort(coords.begin(), coords.end());
    for (std::size_t i = 1; i < coords.size(); ++i)
      if (coords[i] != coords[i - 1] + 1) return "gap in ship";
  }
  for (std::size_t a = 0; a < ships.size(); ++a)
    for (std::size_t b = a + 1; b < ships.size(); ++b)
      for (auto [r1, c1] : ships[a].cells)
        for (auto [r2, c2] : ships[b].cells) {
          const int d = std::max(std::abs(r1 - r2), std::abs(c1 - c2));
          if (d == 0) return "overlap";
          if (d == 1) return "adjacent";
        }
  return "";
}

// ---- LCL: pairwise interval predicates + union-find

struct Brick {
  int x, y;
};

inline bool share_columns(const Brick& a, const Brick& b) {
  // stud columns [x, x+3]
  for (int s = a.x; s <= a.x + 3; ++s)
    if (s >= b.x && s <= b.x + 3) return true;
  return false;
}

/// 0 valid, 1 overlap, 2 disconnected, 3 empty
inline int lcl_judge(const std::vector<Brick>& bricks) {
  if (bricks.empty()) return 3;
  const std::size_t n = bricks.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (bricks[i].y == bricks[j].y && share_columns(bricks[i], bricks[j])) return 1;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(bricks[i].y - bricks[j].y) == 1 && share_columns(bricks[i], bricks[j])) parent[find(i)] = find(j);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != find(0)) return 2;
  return 0;
}

// ---- graphs: brute-force isomorphism for small labelled graphs

struct Graph {
  std::vector<char> labels;                    // element symbol per atom
  std::map<std::pair<int, int>, int> bonds;    // (min,max) -> order
};

inline int bond(const Graph& g, int a, int b) {
  auto it = g.bonds.find({std::min(a, b), std::max(a, b)});
  return it == g.bonds.end() ? 0 : it->second;
}

/// Backtracking isomorphism with label/degree pruning. Fine for <= 12 atoms.
inline bool isomorphic(const Graph& a, const Graph& b) {
  const int n = static_cast<int>(a.labels.size());
  if (n != static_cast<int>(b.labels.size()) || a.bonds.size() != b.bonds.size()) return false;
  auto degree_sig = [](const Graph& g, int v) {
    std::vector<int> orders;
    for (auto& [k, o] : g.bonds)
      if (k.first == v || k.second == v) orders.push_back(o);
    std::sort(orders.begin(), orders.end());
    return std::make_pair(g.labels[v], orders);
  };
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int v) -> bool {
    if (v == n) return true;
    const auto sig = degree_sig(a, v);
    for (int w = 0; w < n; ++w) {
      if (used[w] || degree_sig(b, w) != sig) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = bond(a, u, v) == bond(b, map[u], w);
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return extend(0);
}

// ---- ASCII depiction decoder: walk glyph runs between letters

inline std::optional<Graph> decode_depiction(const std::vector<std::string>& grid) {
  Graph g;
  std::map<std::pair<int, int>, int> atom_at;
  for (int r = 0; r < static_cast<int>(grid.size()); ++r)
    for (int c = 0; c < static_cast<int>(grid[r].size()); ++c) {
      const char ch = grid[r][c];
      if (ch == 'C' || ch == 'N' || ch == 'O' || ch == 'S') {
        atom_at[{r, c}] = static_cast<int>(g.labels.size());
        g.labels.push_back(ch);
      } else if (ch != ' ' && ch != '-' && ch != '=' && ch != '#' && ch != '|' && ch != ':') {
        return std::nullopt;
      }
    }
  auto at = [&](int r, int c) -> char {
    if (r < 0 || r >= static_cast<int>(grid.size()) || c < 0 || c >= static_cast<int>(grid[r].size())) return ' ';
    return grid[r][c];
  };
  auto order_of = [](char ch) { return ch == '-' || ch == '|' ? 1 : ch == '=' || ch == ':' ? 2 : ch == '#' ? 3 : 0; };
  for (auto [pos, id] : atom_at) {
    auto [r, c] = pos;
    // right
    if (char ch = at(r, c + 1); ch == '-' || ch == '=' || ch == '#') {
      int k = c + 1;
      while (at(r, k) == ch) ++k;
      auto it = atom_at.find({r, k});
      if (it == atom_at.end()) return std::nullopt;
      g.bonds[{std::min(id, it->second), std::max(id, it->second)}] = order_of(ch);
    }
    // down
    if (char ch = at(r + 1, c); ch == '|' || ch == ':' || ch == '#') {
      int k = r + 1;
      while (at(k, c) == ch) ++k;
      auto it = atom_at.find({k, c});
      if (it == atom_at.end()) return std::nullopt;
      const auto key = std::make_pair(std::min(id, it->second), std::max(id, it->second));
      if (g.bonds.contains(key)) return std::nullopt;
      g.bonds[key] = order_of(ch);
    }
  }
  return g;
}

// ---- one-ply missed win / missed block on raw grids

struct OnePly {
  bool missed_win;
  bool missed_block;
};

// Brute force on the raw 9-char grid: which empty cells complete a line.
inline OnePly ttt_one_ply(const std::string& cells, char me, int played) {
  const char them = me == 'X' ? 'O' : 'X';
  std::vector<int> own, threats;
  for (int i = 0; i < 9; ++i) {
    if (cells[i] != ' ') continue;
    std::string a = cells, b = cells;
    a[i] = me;
    b[i] = them;
    if (oracle::ttt_line(a, me)) own.push_back(i);
    if (oracle::ttt_line(b, them)) threats.push_back(i);
  }
  std::string after = cells;
  after[played] = me;
  const bool won = oracle::ttt_line(after, me);
  bool blocked = true;
  for (int t : threats) blocked = blocked && t == played;
  return {!own.empty() && !won, !threats.empty() && !won && !blocked};
}

inline int c4_landing(const std::vector<std::string>& rows, int c) {
  for (int r = static_cast<int>(rows.size()) - 1; r >= 0; --r)
    if (rows[r][c] == '.') return r;
  return -1;
}

inline OnePly c4_one_ply(const std::vector<std::string>& rows, char me, int played_col) {
  const char them = me == 'X' ? 'O' : 'X';
  const int cols = static_cast<int>(rows[0].size());
  std::vector<std::pair<int, int>> own, threats;
  for (int c = 0; c < cols; ++c) {
    const int r = c4_landing(rows, c);
    if (r < 0) continue;
    auto a = rows, b = rows;
    a[r][c] = me;
    b[r][c] = them;
    if (oracle::c4_any_four(a, me)) own.push_back({r, c});
    if (oracle::c4_any_four(b, them)) threats.push_back({r, c});
  }
  auto after = rows;
  const int pr = c4_landing(rows, played_col);
  after[pr][played_col] = me;
  const bool won = oracle::c4_any_four(after, me);
  bool blocked = true;
  for (auto t : threats) blocked = blocked && t == std::make_pair(pr, played_col);
  return {!own.empty() && !won, !threats.empty() && !won && !blocked};
}

}  // namespace oracle
