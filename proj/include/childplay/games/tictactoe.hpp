#pragma once

#include <memory>
#include <string>
#include <vector>

#include "childplay/core/game.hpp"
#include "childplay/players/move_parser.hpp"
#include "childplay/players/prompts.hpp"

namespace childplay {

namespace detail {
inline void require_turn(const GameStatus& status, PlayerId to_move, PlayerId player) {
  if (status.over) throw ProtocolError("game is over");
  if (player != to_move) throw ProtocolError(std::string("it is not ") + std::string(to_string(player)) + "'s turn");
}

inline std::string replace_all(std::string text, std::string_view from, std::string_view to) {
  for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
  return text;
}
}  // namespace detail

namespace ttt {

inline constexpr char kBlank = ' ';

inline char mark_of(PlayerId p) { return p == PlayerId::P1 ? 'X' : 'O'; }

/// Square grid of ' ', 'X', 'O'; row-major.
class Board {
 public:
  explicit Board(int size = 3) : size_(size), cells_(static_cast<std::size_t>(size * size), kBlank) {}

  int size() const { return size_; }
  char at(int r, int c) const { return cells_[index(r, c)]; }
  void set(int r, int c, char mark) { cells_[index(r, c)] = mark; }
  bool in_bounds(int r, int c) const { return r >= 0 && c >= 0 && r < size_ && c < size_; }
  bool empty_at(int r, int c) const { return at(r, c) == kBlank; }
  bool full() const {
    for (char c : cells_)
      if (c == kBlank) return false;
    return true;
  }
  int count(char mark) const {
    int n = 0;
    for (char c : cells_) n += c == mark;
    return n;
  }
  const std::vector<char>& cells() const { return cells_; }

  friend bool operator==(const Board&, const Board&) = default;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * size_ + c); }
  int size_;
  std::vector<char> cells_;
};

/// True iff a full row, column or diagonal holds `player`'s mark.
inline bool check_win(const Board& b, PlayerId player) {
  const char m = mark_of(player);
  const int n = b.size();
  bool diag = true;
  bool anti = true;
  for (int i = 0; i < n; ++i) {
    bool row = true;
    bool col = true;
    for (int j = 0; j < n; ++j) {
      row = row && b.at(i, j) == m;
      col = col && b.at(j, i) == m;
    }
    if (row || col) return true;
    diag = diag && b.at(i, i) == m;
    anti = anti && b.at(i, n - 1 - i) == m;
  }
  return diag || anti;
}

inline bool check_tie(const Board& b) {
  return b.full() && !check_win(b, PlayerId::P1) && !check_win(b, PlayerId::P2);
}

inline std::string render(const Board& b) {
  const int n = b.size();
  std::string rule = "  +";
  for (int c = 0; c < n; ++c) rule += "---+";
  std::string out = "  ";
  for (int c = 0; c < n; ++c) out += "  " + std::to_string(c) + " ";
  out = detail::rstrip_lines(out) + "\n" + rule + "\n";
  for (int r = 0; r < n; ++r) {
    out += std::to_string(r) + " |";
    for (int c = 0; c < n; ++c) {
      out += ' ';
      out += b.at(r, c);
      out += " |";
    }
    out += "\n" + rule + "\n";
  }
  return out;
}

}  // namespace ttt

class TicTacToe final : public Game {
 public:
  explicit TicTacToe(int size = 3, bool strict = false) : board_(size), strict_(strict) {}

  GameKind kind() const override { return GameKind::TicTacToe; }

  void reset() override {
    board_ = ttt::Board(board_.size());
    to_move_ = PlayerId::P1;
    status_ = GameStatus::running();
    last_.reset();
  }

  std::string text_state(PlayerId) const override { return ttt::render(board_); }

  std::string intro_prompt() const override {
    std::string text(prompts::kTicTacToe);
    const int n = board_.size();
    if (n == 3) return text;
    const auto s = std::to_string(n);
    text = detail::replace_all(text, "3x3", s + "x" + s);
    text = detail::replace_all(text, "from 0 to 2", "from 0 to " + std::to_string(n - 1));
    return detail::replace_all(text, "three of their marks", s + " of their marks");
  }

  std::vector<std::string> legal_moves(PlayerId) const override {
    std::vector<std::string> out;
    if (status_.over) return out;
    for (int r = 0; r < board_.size(); ++r)
      for (int c = 0; c < board_.size(); ++c)
        if (board_.empty_at(r, c)) out.push_back(std::to_string(r) + " " + std::to_string(c));
    return out;
  }

  bool is_legal(PlayerId, std::string_view raw) const override { return target(raw).has_value(); }

  MoveOutcome apply(PlayerId player, std::string_view raw) override {
    detail::require_turn(status_, to_move_, player);
    const auto cell = target(raw);
    if (!cell) {
      status_ = GameStatus::forfeited_by(player);
      return MoveOutcome::WrongMove;
    }
    return place(player, *cell);
  }

  /// Applies a move already known to be legal.
  MoveOutcome place(PlayerId player, Cell cell) {
    detail::require_turn(status_, to_move_, player);
    board_.set(cell.row, cell.col, ttt::mark_of(player));
    last_ = cell;
    if (ttt::check_win(board_, player)) {
      status_ = GameStatus::won_by(player);
      return MoveOutcome::Win;
    }
    if (ttt::check_tie(board_)) {
      status_ = GameStatus::tie();
      return MoveOutcome::Tie;
    }
    to_move_ = opponent(player);
    return MoveOutcome::Accepted;
  }

  GameStatus status() const override { return status_; }
  PlayerId to_move() const override { return to_move_; }
  std::unique_ptr<Game> clone() const override { return std::make_unique<TicTacToe>(*this); }
  std::optional<Cell> last_cell() const override { return last_; }

  const ttt::Board& board() const { return board_; }

 private:
  std::optional<Cell> target(std::string_view raw) const {
    const auto parsed = parse_move(GameKind::TicTacToe, raw, strict_);
    if (!parsed) return std::nullopt;
    const auto [r, c] = std::get<CellMove>(*parsed);
    if (!board_.in_bounds(r, c) || !board_.empty_at(r, c)) return std::nullopt;
    return Cell{r, c};
  }

  ttt::Board board_;
  bool strict_;
  PlayerId to_move_ = PlayerId::P1;
  GameStatus status_;
  std::optional<Cell> last_;
};

}  // namespace childplay
