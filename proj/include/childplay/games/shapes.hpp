#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "childplay/core/errors.hpp"
#include "childplay/core/game.hpp"
#include "childplay/core/rng.hpp"

namespace childplay::shapes {

inline constexpr char kEmpty = '0';
inline constexpr char kFull = '1';

/// Rows of '0'/'1' characters.
using Grid = std::vector<std::string>;

enum class ShapeKind : std::uint8_t { Circle, Square, Triangle, Cross };

inline constexpr std::array kAllLabels = {ShapeKind::Circle, ShapeKind::Square, ShapeKind::Triangle, ShapeKind::Cross};
/// Only these are ever drawn; circle is a distractor option.
inline constexpr std::array kDrawnShapes = {ShapeKind::Square, ShapeKind::Triangle, ShapeKind::Cross};

inline std::string_view to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Square: return "square";
    case ShapeKind::Triangle: return "triangle";
    case ShapeKind::Cross: return "cross";
  }
  return "?";
}

inline std::optional<ShapeKind> shape_from_string(std::string_view s) {
  for (auto k : kAllLabels)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline Grid create_board(int height, int width) {
  if (height < 5 || width < 5) throw ContractViolation("shape board must be at least 5x5");
  return Grid(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(width), kEmpty));
}

namespace detail {
inline int rows(const Grid& g) { return static_cast<int>(g.size()); }
inline int cols(const Grid& g) { return g.empty() ? 0 : static_cast<int>(g.front().size()); }
inline bool inside(const Grid& g, int r, int c) { return r >= 0 && c >= 0 && r < rows(g) && c < cols(g); }
inline void set(Grid& g, int r, int c) { g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = kFull; }
}  // namespace detail

inline Grid& draw_rectangle(Grid& grid, int top, int left, int h, int w) {
  if (h < 1 || w < 1 || !detail::inside(grid, top, left) || !detail::inside(grid, top + h - 1, left + w - 1))
    throw ContractViolation("rectangle does not fit on the board");
  for (int r = top; r < top + h; ++r)
    for (int c = left; c < left + w; ++c) detail::set(grid, r, c);
  return grid;
}

/// Midpoint circle outline centred at column `cx`, row `cy`.
inline Grid& draw_circle(Grid& grid, int cx, int cy, int r) {
  if (r < 0 || !detail::inside(grid, cy - r, cx - r) || !detail::inside(grid, cy + r, cx + r))
    throw ContractViolation("circle does not fit on the board");
  int x = 0;
  int y = r;
  int d = 1 - r;
  auto plot8 = [&](int px, int py) {
    const std::array<std::pair<int, int>, 8> pts = {
        {{px, py}, {py, px}, {-px, py}, {-py, px}, {px, -py}, {py, -px}, {-px, -py}, {-py, -px}}};
    for (auto [dx, dy] : pts) detail::set(grid, cy + dy, cx + dx);
  };
  plot8(x, y);
  while (x < y) {
    ++x;
    if (d < 0) {
      d += 2 * x + 1;
    } else {
      --y;
      d += 2 * (x - y) + 1;
    }
    if (x <= y) plot8(x, y);
  }
  return grid;
}

/// Filled triangle: row apex_row + k holds 2k + 1 cells centred on apex_col.
inline Grid& draw_triangle(Grid& grid, int apex_row, int apex_col, int height) {
  if (height < 1 || !detail::inside(grid, apex_row, apex_col) ||
      !detail::inside(grid, apex_row + height - 1, apex_col - (height - 1)) ||
      !detail::inside(grid, apex_row + height - 1, apex_col + (height - 1)))
    throw ContractViolation("triangle does not fit on the board");
  for (int k = 0; k < height; ++k)
    for (int c = apex_col - k; c <= apex_col + k; ++c) detail::set(grid, apex_row + k, c);
  return grid;
}

inline Grid& draw_cross(Grid& grid, int center_row, int center_col, int arm) {
  if (arm < 0 || !detail::inside(grid, center_row - arm, center_col - arm) ||
      !detail::inside(grid, center_row + arm, center_col + arm))
    throw ContractViolation("cross does not fit on the board");
  for (int k = -arm; k <= arm; ++k) {
    detail::set(grid, center_row + k, center_col);
    detail::set(grid, center_row, center_col + k);
  }
  return grid;
}

inline std::size_t count_full(const Grid& grid) {
  std::size_t n = 0;
  for (const auto& row : grid)
    for (char c : row) n += c == kFull;
  return n;
}

struct ShapeBoard {
  Grid grid;
  ShapeKind shape = ShapeKind::Square;
  std::array<ShapeKind, 4> answer_options = kAllLabels;
};

struct SizeRange {
  int lo;
  int hi;
};

/// Size ranges used by `play_shape_round`, clamped so every shape fits `board_size`.
struct ShapeSizes {
  SizeRange square_side;
  SizeRange triangle_height;
  SizeRange cross_arm;

  static ShapeSizes for_board(int board_size) {
    return {{3, std::min(7, board_size)}, {3, std::min(7, (board_size + 1) / 2)}, {2, std::min(6, (board_size - 1) / 2)}};
  }
};

inline std::string render_board(const ShapeBoard& board) {
  std::string out;
  for (const auto& row : board.grid) {
    out += row;
    out += '\n';
  }
  static constexpr std::array<char, 4> letters = {'A', 'B', 'C', 'D'};
  for (std::size_t i = 0; i < board.answer_options.size(); ++i) {
    if (i) out += ' ';
    out += letters[i];
    out += ") ";
    out += to_string(board.answer_options[i]);
  }
  out += '\n';
  return out;
}

inline std::string shape_intro_prompt(int board_size) {
  const auto n = std::to_string(board_size);
  return "Below is a " + n + " by " + n +
         " grid of 0s. I have flipped some 0s into 1s such that a basic geometrical shape has formed. "
         "Can you tell me what shape it is? Answer with exactly one of the listed options, nothing else.";
}

/// Draws one random square, triangle or cross and shuffles the four labels.
inline std::pair<ShapeBoard, std::string> play_shape_round(Rng& rng, int board_size = 15,
                                                           std::optional<ShapeKind> forced = std::nullopt) {
  ShapeBoard board;
  board.grid = create_board(board_size, board_size);
  board.shape = forced ? *forced : kDrawnShapes[rng.index(kDrawnShapes.size())];
  if (board.shape == ShapeKind::Circle) throw ConfigError("shape", "circle is never drawn");
  const auto sizes = ShapeSizes::for_board(board_size);
  auto draw_in = [&](SizeRange range) { return static_cast<int>(rng.uniform_int(range.lo, range.hi)); };
  switch (board.shape) {
    case ShapeKind::Square: {
      const int side = draw_in(sizes.square_side);
      const int top = static_cast<int>(rng.uniform_int(0, board_size - side));
      const int left = static_cast<int>(rng.uniform_int(0, board_size - side));
      draw_rectangle(board.grid, top, left, side, side);
      break;
    }
    case ShapeKind::Triangle: {
      const int h = draw_in(sizes.triangle_height);
      const int apex_row = static_cast<int>(rng.uniform_int(0, board_size - h));
      const int apex_col = static_cast<int>(rng.uniform_int(h - 1, board_size - h));
      draw_triangle(board.grid, apex_row, apex_col, h);
      break;
    }
    case ShapeKind::Cross: {
      const int arm = draw_in(sizes.cross_arm);
      const int r = static_cast<int>(rng.uniform_int(arm, board_size - 1 - arm));
      const int c = static_cast<int>(rng.uniform_int(arm, board_size - 1 - arm));
      draw_cross(board.grid, r, c, arm);
      break;
    }
    case ShapeKind::Circle: break;
  }
  std::vector<ShapeKind> options(kAllLabels.begin(), kAllLabels.end());
  rng.shuffle(options);
  std::copy(options.begin(), options.end(), board.answer_options.begin());
  return {board, shape_intro_prompt(board_size) + "\n" + render_board(board)};
}

/// Distinct option labels mentioned as whole words (case-insensitive).
/// "rectangle" counts as "square".
inline std::set<ShapeKind> mentioned_labels(std::string_view raw) {
  std::set<ShapeKind> found;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    if (word == "rectangle") {
      found.insert(ShapeKind::Square);
    } else if (auto k = shape_from_string(word)) {
      found.insert(*k);
    }
    word.clear();
  };
  for (char ch : raw) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else {
      flush();
    }
  }
  flush();
  return found;
}

inline std::optional<ShapeKind> extract_label(std::string_view raw) {
  const auto found = mentioned_labels(raw);
  if (found.size() != 1) return std::nullopt;
  return *found.begin();
}

enum class Judgement : std::uint8_t { Correct, Incorrect, Unparsable };

inline Judgement judge_shape_answer(const ShapeBoard& board, std::string_view raw) {
  const auto label = extract_label(raw);
  if (!label) return Judgement::Unparsable;
  return *label == board.shape ? Judgement::Correct : Judgement::Incorrect;
}

}  // namespace childplay::shapes
