#pragma once

// Introductory prompts, byte-identical to the published benchmark prompts
// after placeholder substitution. Mirrors assets/prompts/v1/*.txt.

#include <map>
#include <string>
#include <string_view>

#include "childplay/core/errors.hpp"
#include "childplay/core/game.hpp"

namespace childplay::prompts {

inline constexpr std::string_view kVersion = "v1";

inline constexpr std::string_view kBattleship =
    "Battleship is a two-player guessing game where each player has a fleet of ships on a secret grid and then takes "
    "turns guessing the locations of the opponent's ships. The objective is to sink all of the opponent's ships by "
    "correctly guessing their locations. O's in a board mean that the player selected a square to attack and there "
    "was no ship there - it's a miss. Had there been a ship there, instead of an O you would see an X. In your board, "
    "an <S> signifies a ship position, and a <~> signifies the sea. Your input is just two numbers with a space in "
    "between, one for the row (from 0 to {board_size_minus_1}) and one for the column (from 0 to "
    "{board_size_minus_1}), like: 0 0, nothing else. Do not output anything else but the row col values.";

inline constexpr std::string_view kTicTacToe =
    "Tic-Tac-Toe is a two-player game played on a 3x3 grid. Players take turns placing their mark, X or O, in an "
    "empty square. The first player to place three of their marks in a horizontal, vertical, or diagonal row wins the "
    "game. You will play as player 1, therefore you play with X while your adversary plays with the symbol O. Your "
    "input is then a number (from 0 to 2) for the row followed by a space and another number (from 0 to 2) for the "
    "column, nothing else. Do not output anything else but the row col values else you lose.";

inline constexpr std::string_view kConnectFour =
    "Connect-Four is a two-player game. The pieces fall straight down, occupying the next available space within a "
    "column. The objective of the game is to be the first to form a horizontal, vertical, or diagonal line of four "
    "of one's own discs. In a board, player 1, you, plays with symbol X, while player 2, your opponent, plays with "
    "symbol O. Your input is just a number from 0 to 6, nothing else.  Do not output anything else but the col value "
    "else you lose.";

inline constexpr std::string_view kLclValidity =
    "You will receive a description of a Lego structure, for instance, ((x1, y1, 'color1'), (x2, y2, 'color2')), "
    "which lists the coordinates and colors of two pieces. A construct is valid if all Lego pieces are connected but "
    "not overlapping. A Lego piece is connected through interlocking pegs, not by merely touching sides. Two Lego "
    "pieces overlap when they share the same y-coordinate and any part of their length has the same x-coordinate. If "
    "the following structure is valid then reply with valid, otherwise reply with invalid (do not justify your "
    "answer): {pieces}";

inline constexpr std::string_view kLclGeneration =
    "A description of a Lego structure consists of a list of tuples, ((x1, y1, 'color1'), (x2, y2, 'color2')), where "
    "each tuple shows the coordinates and colors of a piece. Such a structure is valid if all Lego pieces are "
    "connected but not overlapping. A Lego piece is connected through interlocking pegs, not by merely touching "
    "sides. Two Lego pieces overlap when they share the same y-coordinate and any part of their length has the same "
    "x-coordinate. Produce a description of a valid structure using {n_pieces} Lego pieces. Reply only with the Lego "
    "structure description following the format ((x1, y1, 'color1'), (x2, y2, 'color2'), ...), write nothing else "
    "but the structure.";

struct PromptTemplate {
  GameKind game_kind;
  std::string_view text;
  std::string_view asset_name;
};

inline PromptTemplate template_for(GameKind kind) {
  switch (kind) {
    case GameKind::Battleship: return {kind, kBattleship, "battleship.txt"};
    case GameKind::TicTacToe: return {kind, kTicTacToe, "tictactoe.txt"};
    case GameKind::ConnectFour: return {kind, kConnectFour, "connectfour.txt"};
    case GameKind::LclValidity: return {kind, kLclValidity, "lcl_validity.txt"};
    case GameKind::LclGeneration: return {kind, kLclGeneration, "lcl_generation.txt"};
    default: break;
  }
  throw TemplateError("no published prompt template for game '" + std::string(to_string(kind)) + "'");
}

using Substitutions = std::map<std::string, std::string, std::less<>>;

/// Replaces every {name} with its value; every other byte is preserved.
/// Leftover braces that name no substitution raise TemplateError.
inline std::string render_prompt(std::string_view text, const Substitutions& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto close = text.find('}', i);
      if (close == std::string_view::npos) throw TemplateError("unterminated placeholder");
      const auto name = text.substr(i + 1, close - i - 1);
      const auto it = values.find(name);
      if (it == values.end()) throw TemplateError("unresolved placeholder {" + std::string(name) + "}");
      out += it->second;
      i = close + 1;
    } else {
      out += text[i++];
    }
  }
  return out;
}

inline std::string render_prompt(const PromptTemplate& t, const Substitutions& values) {
  return render_prompt(t.text, values);
}

}  // namespace childplay::prompts
