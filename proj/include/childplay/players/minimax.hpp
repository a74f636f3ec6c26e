#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <string>

#include "childplay/games/tictactoe.hpp"

namespace childplay::minimax {

/// Score for the side to move: +(1 + empty cells left) for a win, the negation
/// for a loss, 0 for a tie. Faster wins and slower losses rank higher.
class Solver {
 public:
  static const Solver& instance() {
    static const Solver solver;
    return solver;
  }

  int value(const ttt::Board& b, PlayerId to_move) const {
    require_classic(b);
    auto cells = encode(b);
    return solve(cells, to_move);
  }

  /// Best move for `to_move`; lowest (row, col) among equal scores.
  Cell best_move(const ttt::Board& b, PlayerId to_move) const {
    require_classic(b);
    auto cells = encode(b);
    if (terminal(cells)) throw ContractViolation("minimax needs a non-terminal board");
    int best = INT32_MIN;
    Cell choice{};
    for (int i = 0; i < 9; ++i) {
      if (cells[i] != 0) continue;
      cells[i] = mark(to_move);
      const int v = -solve(cells, opponent(to_move));
      cells[i] = 0;
      if (v > best) {
        best = v;
        choice = {i / 3, i % 3};
      }
    }
    return choice;
  }

 private:
  using Cells = std::array<std::uint8_t, 9>;  // 0 empty, 1 X, 2 O
  static constexpr int kStates = 19683;
  static constexpr std::int8_t kUnknown = INT8_MIN;

  Solver() { table_.fill(kUnknown); }

  static void require_classic(const ttt::Board& b) {
    if (b.size() != 3) throw ContractViolation("minimax supports only the 3x3 board");
  }
  static std::uint8_t mark(PlayerId p) { return p == PlayerId::P1 ? 1 : 2; }
  static Cells encode(const ttt::Board& b) {
    Cells c{};
    for (int i = 0; i < 9; ++i) {
      const char m = b.at(i / 3, i % 3);
      c[i] = m == 'X' ? 1 : m == 'O' ? 2 : 0;
    }
    return c;
  }
  static int key(const Cells& c, PlayerId p) {
    int k = 0;
    for (auto v : c) k = k * 3 + v;
    return k * 2 + index_of(p);
  }
  static bool has_line(const Cells& c, std::uint8_t m) {
    static constexpr int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                        {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
    for (const auto& l : lines)
      if (c[l[0]] == m && c[l[1]] == m && c[l[2]] == m) return true;
    return false;
  }
  static int empties(const Cells& c) {
    int n = 0;
    for (auto v : c) n += v == 0;
    return n;
  }
  static bool terminal(const Cells& c) { return has_line(c, 1) || has_line(c, 2) || empties(c) == 0; }

  int solve(Cells& c, PlayerId p) const {
    const int k = key(c, p);
    {
      std::lock_guard lock(mu_);
      if (table_[k] != kUnknown) return table_[k];
    }
    int v;
    const int e = empties(c);
    if (has_line(c, mark(p))) {
      v = 1 + e;
    } else if (has_line(c, mark(opponent(p)))) {
      v = -(1 + e);
    } else if (e == 0) {
      v = 0;
    } else {
      v = INT32_MIN;
      for (int i = 0; i < 9; ++i) {
        if (c[i] != 0) continue;
        c[i] = mark(p);
        v = std::max(v, -solve(c, opponent(p)));
        c[i] = 0;
      }
    }
    std::lock_guard lock(mu_);
    table_[k] = static_cast<std::int8_t>(v);
    return v;
  }

  mutable std::mutex mu_;
  mutable std::array<std::int8_t, kStates * 2> table_{};
};

inline Cell best_move(const ttt::Board& b, PlayerId p) { return Solver::instance().best_move(b, p); }

inline std::string minimax_move(const ttt::Board& b, PlayerId p) {
  const auto c = best_move(b, p);
  return std::to_string(c.row) + " " + std::to_string(c.col);
}

}  // namespace childplay::minimax
