#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "childplay/core/game.hpp"
#include "childplay/games/tictactoe.hpp"
#include "childplay/players/move_parser.hpp"
#include "childplay/players/prompts.hpp"

namespace childplay {
namespace c4 {

inline constexpr char kEmpty = '.';

inline char mark_of(PlayerId p) { return p == PlayerId::P1 ? 'X' : 'O'; }

/// Row 0 is the top of the board; discs settle at the highest row index free.
class Board {
 public:
  explicit Board(int rows = 7, int cols = 7)
      : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows * cols), kEmpty) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  char at(int r, int c) const { return cells_[index(r, c)]; }
  void set(int r, int c, char mark) { cells_[index(r, c)] = mark; }
  bool in_bounds(int r, int c) const { return r >= 0 && c >= 0 && r < rows_ && c < cols_; }
  bool column_full(int c) const { return at(0, c) != kEmpty; }
  std::optional<Cell> last_move() const { return last_; }

  /// Row a disc dropped into `c` would land on.
  std::optional<int> landing_row(int c) const {
    if (c < 0 || c >= cols_) return std::nullopt;
    for (int r = rows_ - 1; r >= 0; --r)
      if (at(r, c) == kEmpty) return r;
    return std::nullopt;
  }

  /// Places a disc; nullopt if the column is invalid or full.
  std::optional<Cell> drop(int c, char mark) {
    const auto r = landing_row(c);
    if (!r) return std::nullopt;
    set(*r, c, mark);
    last_ = Cell{*r, c};
    return last_;
  }

  friend bool operator==(const Board&, const Board&) = default;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * cols_ + c); }
  int rows_;
  int cols_;
  std::vector<char> cells_;
  std::optional<Cell> last_;
};

/// Longest run of `board.at(cell)` through `cell` along (dr, dc).
inline int run_through(const Board& b, Cell cell, int dr, int dc) {
  const char m = b.at(cell.row, cell.col);
  int n = 1;
  for (int s : {1, -1}) {
    int r = cell.row + s * dr;
    int c = cell.col + s * dc;
    while (b.in_bounds(r, c) && b.at(r, c) == m) {
      ++n;
      r += s * dr;
      c += s * dc;
    }
  }
  return n;
}

inline bool wins_through(const Board& b, Cell cell) {
  if (b.at(cell.row, cell.col) == kEmpty) return false;
  return run_through(b, cell, 0, 1) >= 4 || run_through(b, cell, 1, 0) >= 4 || run_through(b, cell, 1, 1) >= 4 ||
         run_through(b, cell, 1, -1) >= 4;
}

/// Four in a row through the last move.
inline bool check_win(const Board& b) {
  const auto last = b.last_move();
  if (!last) throw ContractViolation("check_win requires a last move");
  return wins_through(b, *last);
}

inline bool check_tie(const Board& b) {
  for (int c = 0; c < b.cols(); ++c)
    if (!b.column_full(c)) return false;
  return !(b.last_move() && check_win(b));
}

inline MoveOutcome drop(Board& b, PlayerId player, int col) {
  if (!b.drop(col, mark_of(player))) return MoveOutcome::WrongMove;
  if (check_win(b)) return MoveOutcome::Win;
  if (check_tie(b)) return MoveOutcome::Tie;
  return MoveOutcome::Accepted;
}

inline std::string render(const Board& b) {
  std::string out;
  for (int c = 0; c < b.cols(); ++c) {
    if (c) out += ' ';
    out += std::to_string(c);
  }
  out += '\n';
  for (int r = 0; r < b.rows(); ++r) {
    for (int c = 0; c < b.cols(); ++c) {
      if (c) out += ' ';
      out += b.at(r, c);
    }
    out += '\n';
  }
  return out;
}

}  // namespace c4

class ConnectFour final : public Game {
 public:
  ConnectFour(int rows = 7, int cols = 7, bool strict = false) : board_(rows, cols), strict_(strict) {}

  GameKind kind() const override { return GameKind::ConnectFour; }

  void reset() override {
    board_ = c4::Board(board_.rows(), board_.cols());
    to_move_ = PlayerId::P1;
    status_ = GameStatus::running();
  }

  std::string text_state(PlayerId) const override { return c4::render(board_); }

  std::string intro_prompt() const override {
    std::string text(prompts::kConnectFour);
    if (board_.cols() == 7) return text;
    return detail::replace_all(text, "from 0 to 6", "from 0 to " + std::to_string(board_.cols() - 1));
  }

  std::vector<std::string> legal_moves(PlayerId) const override {
    std::vector<std::string> out;
    if (status_.over) return out;
    for (int c = 0; c < board_.cols(); ++c)
      if (!board_.column_full(c)) out.push_back(std::to_string(c));
    return out;
  }

  bool is_legal(PlayerId, std::string_view raw) const override { return column(raw).has_value(); }

  MoveOutcome apply(PlayerId player, std::string_view raw) override {
    detail::require_turn(status_, to_move_, player);
    const auto col = column(raw);
    if (!col) {
      status_ = GameStatus::forfeited_by(player);
      return MoveOutcome::WrongMove;
    }
    const auto outcome = c4::drop(board_, player, *col);
    if (outcome == MoveOutcome::Win) {
      status_ = GameStatus::won_by(player);
    } else if (outcome == MoveOutcome::Tie) {
      status_ = GameStatus::tie();
    } else {
      to_move_ = opponent(player);
    }
    return outcome;
  }

  GameStatus status() const override { return status_; }
  PlayerId to_move() const override { return to_move_; }
  std::unique_ptr<Game> clone() const override { return std::make_unique<ConnectFour>(*this); }
  std::optional<Cell> last_cell() const override { return board_.last_move(); }

  const c4::Board& board() const { return board_; }

 private:
  std::optional<int> column(std::string_view raw) const {
    const auto parsed = parse_move(GameKind::ConnectFour, raw, strict_);
    if (!parsed) return std::nullopt;
    const int c = std::get<ColumnMove>(*parsed).col;
    if (!board_.landing_row(c)) return std::nullopt;
    return c;
  }

  c4::Board board_;
  bool strict_;
  PlayerId to_move_ = PlayerId::P1;
  GameStatus status_;
};

}  // namespace childplay
