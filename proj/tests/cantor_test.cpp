#include <gtest/gtest.h>

#include "affcopy/cantor.hpp"
#include "test_support.hpp"

namespace affcopy {
namespace {

using testing::Gen;

TEST(UnitFraction, MatchesLinearScan) {
  Gen g(11);
  for (int i = 0; i < 300; ++i) {
    const Rational x = g.positive(5, 40);
    std::int64_t m = 1;
    while (Rational(1, m) > x) ++m;
    EXPECT_EQ(largest_unit_fraction_below(x), Rational(1, m)) << x.str();
  }
  EXPECT_EQ(largest_unit_fraction_below(Rational(1, 9)), Rational(1, 9));
  EXPECT_EQ(largest_unit_fraction_below(Rational(4, 81)), Rational(1, 21));
  EXPECT_THROW(largest_unit_fraction_below(Rational(0)), std::invalid_argument);
}

TEST(MiddleSplitter, FirstLevels) {
  const auto c = build_cantor(oracles::middle_splitter(), 2);
  EXPECT_EQ(c.level(1).l, Rational(1, 9));
  EXPECT_EQ(c.gap(1, 1), Interval::open(Rational(4, 9), Rational(5, 9)));
  EXPECT_EQ(c.remnant(1, 1), Interval::closed(0, Rational(4, 9)));
  EXPECT_EQ(c.remnant(1, 2), Interval::closed(Rational(5, 9), 1));
  // Proposed gaps at level 2 have length 4/81; the cap l_1/2 = 1/18 is looser.
  EXPECT_EQ(c.level(2).l, Rational(1, 21));
  EXPECT_EQ(c.gap(2, 1).midpoint(), Rational(2, 9));
  EXPECT_EQ(c.gap(2, 2).midpoint(), Rational(7, 9));
  EXPECT_EQ(c.remnant(0, 1), Interval::closed(0, 1));
  EXPECT_THROW(c.remnant(0, 2), std::out_of_range);
}

TEST(MiddleSplitter, VerifiesAtDepthEight) {
  const auto c = build_cantor(oracles::middle_splitter(), 8);
  const auto r = verify_cantor(c, 4);
  for (const auto& v : r.violations) ADD_FAILURE() << v.check << " " << level_index(v.n, v.j) << " " << v.detail;
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.count("remnant_length"), 2 + 4 + 8 + 16 + 32 + 64 + 128 + 256);
  EXPECT_GT(r.count("rightmost_descendant"), 0);
  EXPECT_GT(r.count("telescoping"), 0);
  EXPECT_EQ(r.count("avoids_target"), 0);
}

TEST(MiddleSplitter, DepthOneHasNoDescendantChecks) {
  const auto r = verify_cantor(build_cantor(oracles::middle_splitter(), 1), 4);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.count("rightmost_descendant"), 0);
}

TEST(TernaryMembership, AgreesWithDigitExpansion) {
  // x in the Cantor set iff some ternary expansion avoids digit 1; for x = p/3^k
  // check by enumeration of all 2^k endpoints-with-digits {0,2}.
  const int k = 6;
  const std::int64_t den = 729;
  std::set<std::int64_t> cantor_nums;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::int64_t v = 0;
    for (int i = 0; i < k; ++i) v = 3 * v + ((mask >> (k - 1 - i)) & 1 ? 2 : 0);
    cantor_nums.insert(v);      // 0.d1..dk000...
    cantor_nums.insert(v + 1);  // 0.d1..dk222... (right endpoint of the level-k piece)
  }
  for (std::int64_t p = 0; p <= den; ++p)
    EXPECT_EQ(oracles::in_ternary_cantor(Rational(p, den)), cantor_nums.count(p) > 0) << p << "/" << den;
  EXPECT_TRUE(oracles::in_ternary_cantor(Rational(1, 4)));
  EXPECT_TRUE(oracles::in_ternary_cantor(Rational(3, 4)));
  EXPECT_TRUE(oracles::in_ternary_cantor(Rational(1, 10)));
  EXPECT_FALSE(oracles::in_ternary_cantor(Rational(1, 2)));
  EXPECT_FALSE(oracles::in_ternary_cantor(Rational(-1, 3)));
}

TEST(TernaryOracle, BuildsAvoidingConstruction) {
  const auto oracle = oracles::ternary_cantor_avoider();
  const auto c = build_cantor(oracle, 7);
  const auto r = verify_cantor(c, 3, &oracle);
  for (const auto& v : r.violations) ADD_FAILURE() << v.check << " " << level_index(v.n, v.j) << " " << v.detail;
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.count("avoids_target"), 127);
  // Sample each gap's interior for Cantor points.
  for (int n = 1; n <= c.depth; ++n)
    for (const auto& I : c.level(n).gaps)
      for (int i = 1; i < 8; ++i) EXPECT_FALSE(oracles::in_ternary_cantor(I.lo() + I.length() * Rational(i, 8)));
}

TEST(PointOracle, GapsMissThePoints) {
  Gen g(5);
  std::vector<Rational> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(Rational(g.integer(0, 997), 997));
  pts.push_back(Rational(1, 2));
  const auto oracle = oracles::point_set_avoider(pts);
  const auto c = build_cantor(oracle, 6);
  EXPECT_TRUE(verify_cantor(c, 3, &oracle).pass());
  for (int n = 1; n <= c.depth; ++n)
    for (const auto& I : c.level(n).gaps)
      for (const auto& p : pts) EXPECT_FALSE(I.contains(p)) << I.str() << " " << p.str();
}

TEST(BuildCantor, RejectsBadOracles) {
  GapOracle outside{"outside", [](const Interval& K) { return Interval::open(K.lo(), K.lo() + K.length() / 9); }, {}};
  try {
    build_cantor(outside, 2);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("(n=1, j=1)"), std::string::npos);
  }
  GapOracle closed{"closed", [](const Interval& K) { return closed_middle_third(K); }, {}};
  EXPECT_THROW(build_cantor(closed, 1), std::runtime_error);
  GapOracle hits{"hits", oracles::middle_splitter().propose, [](const Interval&) { return false; }};
  EXPECT_THROW(build_cantor(hits, 1), std::runtime_error);
  EXPECT_THROW(build_cantor(oracles::middle_splitter(), 0), std::invalid_argument);
}

TEST(VerifyCantor, DetectsCorruption) {
  const auto good = build_cantor(oracles::middle_splitter(), 5);
  {
    auto c = good;
    auto& g = c.levels[2].gaps[1];
    g = translate(g, g.length() / 4);  // children no longer match
    EXPECT_FALSE(verify_cantor(c, 2).pass());
  }
  {
    auto c = good;
    c.levels[3].l = c.levels[3].l * 2;
    EXPECT_FALSE(verify_cantor(c, 2).pass());
  }
  {
    auto c = good;
    c.levels[4].remnants.pop_back();
    const auto r = verify_cantor(c, 2);
    ASSERT_FALSE(r.pass());
    EXPECT_EQ(r.violations.front().check, "counts");
  }
  {
    auto c = good;
    c.levels.pop_back();
    EXPECT_FALSE(verify_cantor(c, 2).pass());
  }
}

TEST(VerifyCantor, RemnantBoundAgainstBruteForceLengths) {
  const auto c = build_cantor(oracles::middle_splitter(), 9);
  for (int n = 1; n <= c.depth; ++n) {
    Rational total = 0;
    for (const auto& K : c.level(n).remnants) {
      total += K.hi() - K.lo();
      EXPECT_LT(K.hi() - K.lo(), pow(Rational(2, 3), static_cast<unsigned long>(n)));
    }
    Rational removed = 0;
    for (int m = 1; m <= n; ++m) removed += c.level(m).l * Rational(std::int64_t{1} << (m - 1));
    EXPECT_EQ(total + removed, 1);
  }
}

TEST(TruncatedCover, BoundAndMonotoneInK) {
  const auto c = build_cantor(oracles::middle_splitter(), 9);
  Rational prev = -1;
  for (int k = 1; k <= 6; ++k) {
    const auto r = truncated_union_cover(c, 3, k);
    EXPECT_TRUE(r.within_tails) << k;
    EXPECT_TRUE(r.pass()) << k << " " << r.uncovered_measure.str() << " vs " << r.bound.str();
    EXPECT_EQ(r.bound, Rational(8) * pow(Rational(2, 3), static_cast<unsigned long>(3 + k)));
    if (prev.sign() >= 0) {
      EXPECT_LT(r.uncovered_measure, prev);
    }
    prev = r.uncovered_measure;
    // Pointwise: every uncovered part sits inside some stage-3 remnant.
    for (const auto& p : r.uncovered) {
      bool inside = false;
      for (const auto& K : c.level(3).remnants) inside = inside || K.contains(p);
      EXPECT_TRUE(inside) << p.str();
    }
  }
  EXPECT_THROW(truncated_union_cover(c, 0, 2), std::invalid_argument);
  EXPECT_THROW(truncated_union_cover(c, 3, 7), std::invalid_argument);
}

}  // namespace
}  // namespace affcopy
