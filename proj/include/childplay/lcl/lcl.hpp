#pragma once

// LEGO Connect Language: 2x4 bricks addressed by their leftmost stud column
// (x) and layer (y). A construct is valid iff no two bricks overlap and the
// interlock graph (bricks on adjacent layers sharing a stud column) is
// connected.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "childplay/core/errors.hpp"
#include "childplay/core/rng.hpp"

namespace childplay::lcl {

inline constexpr int kLength = 4;
inline constexpr int kWidth = 2;
inline constexpr int kHeight = 1;

inline constexpr std::array<std::string_view, 6> kPalette = {"red", "blue", "green", "yellow", "white", "black"};

struct Piece {
  int x = 0;
  int y = 0;
  std::string color = "red";

  int last_stud() const { return x + kLength - 1; }
  friend bool operator==(const Piece&, const Piece&) = default;
};

using Construct = std::vector<Piece>;

enum class Reason : std::uint8_t { Ok, Overlap, Disconnected, Empty };

inline std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::Ok: return "ok";
    case Reason::Overlap: return "overlap";
    case Reason::Disconnected: return "disconnected";
    case Reason::Empty: return "empty";
  }
  return "?";
}

struct Verdict {
  bool valid = false;
  Reason reason = Reason::Empty;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline bool share_studs(const Piece& a, const Piece& b) { return a.x <= b.last_stud() && b.x <= a.last_stud(); }

inline bool pieces_overlap(const Piece& a, const Piece& b) { return a.y == b.y && share_studs(a, b); }

inline bool pieces_connected(const Piece& a, const Piece& b) {
  return (a.y - b.y == 1 || b.y - a.y == 1) && share_studs(a, b);
}

inline Verdict is_valid_construct(const Construct& c) {
  if (c.empty()) return {false, Reason::Empty};
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pieces_overlap(c[i], c[j])) return {false, Reason::Overlap};
  // Depth-first flood from piece 0 over interlock edges.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && pieces_connected(c[i], c[j])) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  if (reached != n) return {false, Reason::Disconnected};
  return {true, Reason::Ok};
}

/// Closed form of f(s) = 4(s - 1) + f(s - 1), f(0) = 0.
inline long long count_attachments(long long studs) {
  if (studs < 0) throw ContractViolation("stud count must be non-negative");
  if (studs == 0) return 0;
  return 2 * (studs - 1) * studs;
}

inline long long count_attachments_recursive(long long studs) {
  if (studs < 0) throw ContractViolation("stud count must be non-negative");
  long long f = 0;
  for (long long s = 1; s <= studs; ++s) f += 4 * (s - 1);
  return f;
}

struct CenterPairCounts {
  long long ordered = 0;          // both sides, labelled pieces
  long long unordered = 0;        // both sides, unlabelled pieces
  long long single_per_side = 0;  // positions for one piece on one side
};

/// Brute force: two bricks on the same side of a centre brick at (0, 0),
/// each interlocked with the centre and not overlapping each other.
inline CenterPairCounts enumerate_center_pairs() {
  const Piece center{0, 0, "red"};
  CenterPairCounts counts;
  for (int side : {-1, 1}) {
    std::vector<int> positions;
    for (int x = -kLength * 2; x <= kLength * 2; ++x)
      if (pieces_connected(center, Piece{x, side, "red"})) positions.push_back(x);
    counts.single_per_side = static_cast<long long>(positions.size());
    for (int a : positions)
      for (int b : positions)
        if (a != b && !pieces_overlap(Piece{a, side, "red"}, Piece{b, side, "red"})) {
          ++counts.ordered;
          if (a < b) ++counts.unordered;
        }
  }
  return counts;
}

inline std::string random_color(Rng& rng) { return std::string(kPalette[rng.index(kPalette.size())]); }

/// Random valid construct: first brick at (0, 0); bricks are added layer by
/// layer, each uniformly over every non-overlapping position that interlocks
/// with the assembly and respects the layer order.
inline Construct generate_valid_construct(int n, Rng& rng) {
  if (n < 1) throw ContractViolation("construct needs at least one piece");
  Construct c;
  c.push_back(Piece{0, 0, random_color(rng)});
  int top = 0;
  while (static_cast<int>(c.size()) < n) {
    std::vector<Piece> candidates;
    auto consider_layer = [&](int layer) {
      if (layer < 1) return;
      int lo = INT32_MAX;
      int hi = INT32_MIN;
      for (const auto& p : c)
        if (p.y == layer - 1) {
          lo = std::min(lo, p.x - (kLength - 1));
          hi = std::max(hi, p.last_stud());
        }
      for (int x = lo; x <= hi; ++x) {
        Piece cand{x, layer, ""};
        bool overlaps = false;
        bool connects = false;
        for (const auto& p : c) {
          overlaps = overlaps || pieces_overlap(cand, p);
          connects = connects || pieces_connected(cand, p);
        }
        if (connects && !overlaps) candidates.push_back(cand);
      }
    };
    consider_layer(top);
    consider_layer(top + 1);
    Piece chosen = candidates[rng.index(candidates.size())];
    chosen.color = random_color(rng);
    top = std::max(top, chosen.y);
    c.push_back(std::move(chosen));
  }
  return c;
}

enum class Mutation : std::uint8_t { Overlap, Detach };

inline std::string_view to_string(Mutation m) { return m == Mutation::Overlap ? "overlap" : "detach"; }

struct InvalidConstruct {
  Construct construct;
  Mutation mutation = Mutation::Overlap;
  Reason expected_reason() const { return mutation == Mutation::Overlap ? Reason::Overlap : Reason::Disconnected; }
};

/// Mutates one brick of `valid` so the result fails the checker.
inline InvalidConstruct mutate_to_invalid(Construct valid, Rng& rng) {
  if (valid.size() < 2) throw ContractViolation("mutation needs at least two pieces");
  const auto mutation = rng.bernoulli(0.5) ? Mutation::Overlap : Mutation::Detach;
  const std::size_t victim = rng.index(valid.size());
  if (mutation == Mutation::Overlap) {
    std::size_t anchor = rng.index(valid.size() - 1);
    if (anchor >= victim) ++anchor;
    valid[victim].y = valid[anchor].y;
    valid[victim].x = valid[anchor].x + static_cast<int>(rng.uniform_int(-(kLength - 1), kLength - 1));
  } else {
    int right = INT32_MIN;
    for (std::size_t i = 0; i < valid.size(); ++i)
      if (i != victim) right = std::max(right, valid[i].last_stud());
    valid[victim].x = right + 1 + static_cast<int>(rng.uniform_int(0, kLength - 1));
  }
  return {std::move(valid), mutation};
}

inline InvalidConstruct generate_invalid_construct(int n, Rng& rng) {
  if (n < 2) throw ContractViolation("invalid construct needs at least two pieces");
  return mutate_to_invalid(generate_valid_construct(n, rng), rng);
}

/// Wire format: ((x1, y1, 'color1'), (x2, y2, 'color2'), ...)
inline std::string format_construct(const Construct& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(c[i].x) + ", " + std::to_string(c[i].y) + ", '" + c[i].color + "')";
  }
  out += ")";
  return out;
}

namespace detail {

class ConstructParser {
 public:
  explicit ConstructParser(std::string_view text) : text_(text) {}

  Construct parse() {
    skip_ws();
    const char open = expect_open();
    Construct out;
    skip_ws();
    if (peek() == '(' || peek() == '[') {
      parse_tuple(out);
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        skip_ws();
        if (peek() == close_of(open)) break;  // trailing comma
        parse_tuple(out);
        skip_ws();
      }
    }
    expect(close_of(open));
    skip_ws();
    if (peek() == '.') ++pos_;
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    if (out.empty()) fail("empty construct");
    return out;
  }

 private:
  static char close_of(char open) { return open == '(' ? ')' : ']'; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char expect_open() {
    const char c = peek();
    if (c != '(' && c != '[') fail("expected '(' or '['");
    ++pos_;
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int parse_int() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits || pos_ - digits > 9) {
      pos_ = start;
      fail("expected integer");
    }
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  std::string parse_color() {
    skip_ws();
    const char quote = peek();
    if (quote != '\'' && quote != '"') fail("expected quoted color");
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != quote) ++pos_;
    if (pos_ >= text_.size()) fail("unterminated color");
    std::string color(text_.substr(start, pos_ - start));
    ++pos_;
    return color;
  }

  void parse_tuple(Construct& out) {
    const char open = expect_open();
    Piece p;
    p.x = parse_int();
    skip_ws();
    expect(',');
    p.y = parse_int();
    skip_ws();
    expect(',');
    p.color = parse_color();
    skip_ws();
    expect(close_of(open));
    out.push_back(std::move(p));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Accepts ( ) or [ ] delimiters, integer coordinates, quoted colors,
/// arbitrary whitespace and one trailing period. Throws ParseError.
inline Construct parse_construct(std::string_view raw) { return detail::ConstructParser(raw).parse(); }

/// Deterministic SVG: one 4x1 rectangle per brick plus four stud nubs.
inline std::string render_construct_svg(const Construct& c) {
  constexpr int unit = 20;
  int min_x = 0, max_x = kLength, min_y = 0, max_y = 1;
  if (!c.empty()) {
    min_x = max_x = c.front().x;
    min_y = max_y = c.front().y;
    for (const auto& p : c) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
    max_x += kLength;
    max_y += 1;
  }
  const int width = (max_x - min_x + 2) * unit;
  const int height = (max_y - min_y + 2) * unit;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                    std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                    std::to_string(height) + "\">\n";
  for (const auto& p : c) {
    // Layer 0 sits at the bottom.
    const int px = (p.x - min_x + 1) * unit;
    const int py = (max_y - p.y) * unit;
    svg += "  <rect class=\"brick\" x=\"" + std::to_string(px) + "\" y=\"" + std::to_string(py) + "\" width=\"" +
           std::to_string(kLength * unit) + "\" height=\"" + std::to_string(unit) + "\" fill=\"" + p.color +
           "\" stroke=\"black\"/>\n";
    for (int s = 0; s < kLength; ++s) {
      svg += "  <rect class=\"stud\" x=\"" + std::to_string(px + s * unit + unit / 4) + "\" y=\"" +
             std::to_string(py - unit / 4) + "\" width=\"" + std::to_string(unit / 2) + "\" height=\"" +
             std::to_string(unit / 4) + "\" fill=\"" + p.color + "\" stroke=\"black\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace childplay::lcl
