#include <gtest/gtest.h>

#include <set>

#include "childplay/lcl/lcl.hpp"
#include "support/oracles.hpp"

using namespace childplay;
using lcl::Construct;
using lcl::Piece;
using lcl::Reason;

namespace {
Construct bricks(std::initializer_list<std::pair<int, int>> xy) {
  Construct c;
  for (auto [x, y] : xy) c.push_back(Piece{x, y, "red"});
  return c;
}

std::vector<oracle::Brick> to_oracle(const Construct& c) {
  std::vector<oracle::Brick> out;
  for (const auto& p : c) out.push_back({p.x, p.y});
  return out;
}

Reason reason_of(int code) {
  switch (code) {
    case 0: return Reason::Ok;
    case 1: return Reason::Overlap;
    case 2: return Reason::Disconnected;
    default: return Reason::Empty;
  }
}
}  // namespace

TEST(LclPredicates, OverlapExamples) {
  EXPECT_TRUE(lcl::pieces_overlap({0, 0}, {2, 0}));
  EXPECT_FALSE(lcl::pieces_overlap({0, 0}, {4, 0}));
  EXPECT_FALSE(lcl::pieces_overlap({0, 0}, {0, 1}));
}

TEST(LclPredicates, ConnectionExamples) {
  EXPECT_TRUE(lcl::pieces_connected({0, 0}, {2, 1}));
  EXPECT_FALSE(lcl::pieces_connected({0, 0}, {4, 1}));
  EXPECT_FALSE(lcl::pieces_connected({0, 0}, {4, 0}));
  EXPECT_FALSE(lcl::pieces_connected({0, 0}, {0, 2}));
}

TEST(LclPredicates, Symmetric) {
  for (int ax = -5; ax <= 5; ++ax)
    for (int ay = 0; ay <= 3; ++ay)
      for (int bx = -5; bx <= 5; ++bx)
        for (int by = 0; by <= 3; ++by) {
          const Piece a{ax, ay}, b{bx, by};
          ASSERT_EQ(lcl::pieces_overlap(a, b), lcl::pieces_overlap(b, a));
          ASSERT_EQ(lcl::pieces_connected(a, b), lcl::pieces_connected(b, a));
        }
}

TEST(LclChecker, NamedExamples) {
  EXPECT_EQ(lcl::is_valid_construct(bricks({{0, 0}, {4, 0}, {2, 1}})), (lcl::Verdict{true, Reason::Ok}));
  EXPECT_EQ(lcl::is_valid_construct(bricks({{0, 0}, {4, 0}, {8, 0}})).reason, Reason::Disconnected);
  EXPECT_EQ(lcl::is_valid_construct(bricks({{1, 1}, {2, 1}, {3, 1}})).reason, Reason::Overlap);
  EXPECT_EQ(lcl::is_valid_construct({}).reason, Reason::Empty);
  EXPECT_TRUE(lcl::is_valid_construct(bricks({{0, 0}})).valid);
  // (4, 1) shares no stud with anything below it.
  EXPECT_FALSE(lcl::is_valid_construct(bricks({{0, 0}, {-2, 1}, {4, 1}})).valid);
}

TEST(LclChecker, MatchesBruteForceOnSmallDomain) {
  // All constructs of 1..3 pieces on x in [-6, 6], y in [0, 3] (unordered, repeats
  // allowed so overlaps are covered), plus a seeded sweep of 4-piece constructs.
  std::vector<std::pair<int, int>> cells;
  for (int y = 0; y <= 3; ++y)
    for (int x = -6; x <= 6; ++x) cells.emplace_back(x, y);
  const std::size_t m = cells.size();
  long checked = 0;
  auto check = [&](const Construct& c) {
    const auto v = lcl::is_valid_construct(c);
    const int code = oracle::lcl_judge(to_oracle(c));
    ASSERT_EQ(v.valid, code == 0);
    ASSERT_EQ(v.reason, reason_of(code));
    ++checked;
  };
  for (std::size_t a = 0; a < m; ++a) {
    check(bricks({cells[a]}));
    for (std::size_t b = a; b < m; ++b) {
      check(bricks({cells[a], cells[b]}));
      for (std::size_t c = b; c < m; ++c) check(bricks({cells[a], cells[b], cells[c]}));
    }
  }
  Rng rng(17);
  for (int i = 0; i < 200000; ++i) {
    Construct c;
    for (int k = 0; k < 4; ++k) c.push_back(Piece{static_cast<int>(rng.uniform_int(-6, 6)), static_cast<int>(rng.uniform_int(0, 3))});
    check(c);
  }
  const long n = static_cast<long>(m);
  EXPECT_EQ(checked, n + n * (n + 1) / 2 + n * (n + 1) * (n + 2) / 6 + 200000);
}

TEST(LclCounting, ClosedFormEqualsRecursion) {
  for (long long s = 0; s <= 20; ++s) EXPECT_EQ(lcl::count_attachments(s), lcl::count_attachments_recursive(s)) << s;
  EXPECT_EQ(lcl::count_attachments(0), 0);
  EXPECT_EQ(lcl::count_attachments(2), 4);
  EXPECT_EQ(lcl::count_attachments(4), 24);
  EXPECT_THROW(lcl::count_attachments(-1), ContractViolation);
}

TEST(LclCounting, CenterPairsMatchCountAttachments) {
  const auto counts = lcl::enumerate_center_pairs();
  EXPECT_EQ(counts.single_per_side, 7);
  EXPECT_EQ(counts.unordered, 12);
  EXPECT_EQ(counts.ordered, 24);
  EXPECT_EQ(counts.ordered, lcl::count_attachments(4));
}

TEST(LclGenerator, ValidConstructsPassAndFollowRules) {
  Rng rng(5);
  for (int i = 0; i < 3000; ++i) {
    const int n = 1 + i % 6;
    const auto c = lcl::generate_valid_construct(n, rng);
    ASSERT_EQ(static_cast<int>(c.size()), n);
    ASSERT_EQ(c[0].x, 0);
    ASSERT_EQ(c[0].y, 0);
    for (std::size_t k = 1; k < c.size(); ++k) ASSERT_GE(c[k].y, c[k - 1].y);
    ASSERT_EQ(oracle::lcl_judge(to_oracle(c)), 0);
    for (const auto& p : c)
      ASSERT_NE(std::find(lcl::kPalette.begin(), lcl::kPalette.end(), p.color), lcl::kPalette.end());
  }
}

TEST(LclGenerator, SecondPieceCoversAllSevenOffsets) {
  Rng rng(8);
  std::set<int> xs;
  for (int i = 0; i < 2000; ++i) {
    const auto c = lcl::generate_valid_construct(2, rng);
    ASSERT_EQ(c[1].y, 1);
    ASSERT_GE(c[1].x, -3);
    ASSERT_LE(c[1].x, 3);
    xs.insert(c[1].x);
  }
  EXPECT_EQ(xs.size(), 7u);
}

TEST(LclGenerator, InvalidConstructsFailWithRecordedReason) {
  Rng rng(6);
  int overlap = 0, detach = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto inv = lcl::generate_invalid_construct(2 + i % 5, rng);
    const auto v = lcl::is_valid_construct(inv.construct);
    ASSERT_FALSE(v.valid);
    ASSERT_EQ(v.reason, inv.expected_reason());
    ASSERT_EQ(oracle::lcl_judge(to_oracle(inv.construct)), inv.mutation == lcl::Mutation::Overlap ? 1 : 2);
    (inv.mutation == lcl::Mutation::Overlap ? overlap : detach)++;
  }
  EXPECT_GT(overlap, 1300);
  EXPECT_GT(detach, 1300);
  EXPECT_THROW(lcl::generate_invalid_construct(1, rng), ContractViolation);
}

TEST(LclFormat, RoundTripsThroughParser) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto c = lcl::generate_valid_construct(1 + i % 5, rng);
    EXPECT_EQ(lcl::parse_construct(lcl::format_construct(c)), c);
  }
  EXPECT_EQ(lcl::format_construct(bricks({{0, 0}, {4, 0}, {2, 1}})).substr(0, 24), "((0, 0, 'red'), (4, 0, '");
}

TEST(LclParse, AcceptedSyntax) {
  const auto c = lcl::parse_construct("[(1, 1, 'red'), (2, 1, 'blue'), (3, 1, 'green')]");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[1], (Piece{2, 1, "blue"}));
  EXPECT_EQ(lcl::parse_construct("((0,0,'red'))").size(), 1u);
  EXPECT_EQ(lcl::parse_construct("  ((0, 0, \"red\"), (-2, 1, 'blue')).  ").size(), 2u);
}

TEST(LclParse, RejectsGarbageWithOffset) {
  EXPECT_THROW(lcl::parse_construct("hello"), ParseError);
  EXPECT_THROW(lcl::parse_construct(""), ParseError);
  EXPECT_THROW(lcl::parse_construct("((0, 0, 'red')"), ParseError);
  EXPECT_THROW(lcl::parse_construct("((0, x, 'red'))"), ParseError);
  try {
    lcl::parse_construct("((0, 0, 'red'), (1, 2))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.offset(), 10u);
  }
}

TEST(LclSvg, OneRectPerBrickAndDeterministic) {
  auto count = [](const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
  };
  const auto one = lcl::render_construct_svg(bricks({{0, 0}}));
  EXPECT_EQ(count(one, "class=\"brick\""), 1u);
  EXPECT_EQ(count(one, "class=\"stud\""), 4u);
  const auto tower = bricks({{0, 0}, {0, 1}, {0, 2}});
  const auto svg = lcl::render_construct_svg(tower);
  EXPECT_EQ(count(svg, "class=\"brick\""), 3u);
  EXPECT_EQ(svg, lcl::render_construct_svg(tower));
}
