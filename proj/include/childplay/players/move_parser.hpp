#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "childplay/chem/gts.hpp"
#include "childplay/core/game.hpp"
#include "childplay/games/shapes.hpp"
#include "childplay/lcl/lcl.hpp"

namespace childplay {

struct CellMove {
  int row = 0;
  int col = 0;
};
struct ColumnMove {
  int col = 0;
};
struct ShapeMove {
  shapes::ShapeKind label = shapes::ShapeKind::Square;
};
struct VerdictMove {
  bool valid = false;
};
struct ConstructMove {
  lcl::Construct construct;
};
struct SmilesMove {
  std::string text;
};

using ParsedMove = std::variant<CellMove, ColumnMove, ShapeMove, VerdictMove, ConstructMove, SmilesMove>;

namespace detail {

/// Integer tokens in order of appearance; a '-' directly before digits is a sign.
inline std::vector<long long> integer_tokens(std::string_view raw, std::size_t limit) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < raw.size() && out.size() < limit) {
    if (std::isdigit(static_cast<unsigned char>(raw[i]))) {
      const bool negative = i > 0 && raw[i - 1] == '-';
      long long value = 0;
      while (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i]))) {
        if (value < 1'000'000'000) value = value * 10 + (raw[i] - '0');
        ++i;
      }
      out.push_back(negative ? -value : value);
    } else {
      ++i;
    }
  }
  return out;
}

/// True iff `raw` is exactly `count` unsigned integers separated by whitespace.
inline bool strictly_integers(std::string_view raw, std::size_t count) {
  std::size_t seen = 0;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (std::isspace(static_cast<unsigned char>(raw[i]))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(raw[i]))) {
      ++seen;
      while (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i]))) ++i;
    } else {
      return false;
    }
  }
  return seen == count;
}

inline std::optional<bool> extract_verdict(std::string_view raw) {
  bool said_valid = false;
  bool said_invalid = false;
  std::string word;
  auto flush = [&] {
    said_valid = said_valid || word == "valid";
    said_invalid = said_invalid || word == "invalid";
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
  if (said_valid == said_invalid) return std::nullopt;
  return said_valid;
}

}  // namespace detail

/// Total: every input maps to a parsed move or nullopt, never throws.
inline std::optional<ParsedMove> parse_move(GameKind kind, std::string_view raw, bool strict = false) {
  switch (kind) {
    case GameKind::TicTacToe:
    case GameKind::Battleship: {
      if (strict && !detail::strictly_integers(raw, 2)) return std::nullopt;
      const auto ints = detail::integer_tokens(raw, 2);
      if (ints.size() < 2) return std::nullopt;
      return CellMove{static_cast<int>(ints[0]), static_cast<int>(ints[1])};
    }
    case GameKind::ConnectFour: {
      if (strict && !detail::strictly_integers(raw, 1)) return std::nullopt;
      const auto ints = detail::integer_tokens(raw, 1);
      if (ints.empty()) return std::nullopt;
      return ColumnMove{static_cast<int>(ints[0])};
    }
    case GameKind::Shapes: {
      if (strict) {
        const auto word = chem::trim(raw);
        const auto label = shapes::extract_label(word);
        if (!label || word.find(' ') != std::string::npos) return std::nullopt;
        return ShapeMove{*label};
      }
      if (auto label = shapes::extract_label(raw)) return ShapeMove{*label};
      return std::nullopt;
    }
    case GameKind::LclValidity: {
      if (strict) {
        const auto word = chem::trim(raw);
        if (word != "valid" && word != "invalid") return std::nullopt;
        return VerdictMove{word == "valid"};
      }
      if (auto v = detail::extract_verdict(raw)) return VerdictMove{*v};
      return std::nullopt;
    }
    case GameKind::LclGeneration: {
      try {
        return ConstructMove{lcl::parse_construct(strict ? chem::trim(raw) : chem::clean_prediction(raw))};
      } catch (const ParseError&) {
        return std::nullopt;
      }
    }
    case GameKind::Gts: {
      auto text = strict ? chem::trim(raw) : chem::clean_prediction(raw);
      if (!strict) text = chem::trim(text.substr(0, text.find('\n')));
      if (text.empty()) return std::nullopt;
      return SmilesMove{std::move(text)};
    }
  }
  return std::nullopt;
}

}  // namespace childplay
