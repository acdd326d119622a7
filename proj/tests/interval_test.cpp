#include <gtest/gtest.h>

#include "kernel_properties.hpp"

namespace affcopy {
namespace {

using testing::Gen;
using testing::Membership;
using testing::raw_member;

Rational q(const char* s) { return Rational::parse(s); }
Interval iv(const char* s) { return Interval::parse(s); }
IntervalSet set_of(std::initializer_list<const char*> parts) {
  std::vector<Interval> v;
  for (const char* p : parts) v.push_back(iv(p));
  return normalize(v);
}

TEST(Interval, ParseAndPrint) {
  for (const char* s : {"(0,1)", "[0,1]", "[-1/2,3/4)", "(1/3,2/3]", "[5,5]"}) EXPECT_EQ(iv(s).str(), s);
  EXPECT_THROW(iv("(1,1)"), std::invalid_argument);
  EXPECT_THROW(iv("[2,1]"), std::invalid_argument);
  EXPECT_THROW(iv("0,1"), std::invalid_argument);
  EXPECT_THROW(iv("(0,1,2)"), std::invalid_argument);
}

TEST(Interval, Containment) {
  EXPECT_TRUE(iv("[0,1)").contains(q("0")));
  EXPECT_FALSE(iv("[0,1)").contains(q("1")));
  EXPECT_TRUE(iv("[0,1]").contains(iv("(0,1)")));
  EXPECT_FALSE(iv("(0,1)").contains(iv("[0,1/2]")));
}

TEST(Normalize, MergesOverlapping) { EXPECT_EQ(set_of({"(0,1/2)", "(1/4,3/4)"}).strs(), std::vector<std::string>{"(0,3/4)"}); }

TEST(Normalize, MergesTouchingClosedEndpoint) {
  EXPECT_EQ(set_of({"(0,1/2)", "[1/2,1)"}).strs(), std::vector<std::string>{"(0,1)"});
}

TEST(Normalize, KeepsMissingInteriorPoint) {
  EXPECT_EQ(set_of({"(0,1/2)", "(1/2,1)"}).strs(), (std::vector<std::string>{"(0,1/2)", "(1/2,1)"}));
}

TEST(Normalize, PointFillsHole) { EXPECT_EQ(set_of({"(0,1/2)", "(1/2,1)", "[1/2,1/2]"}).strs(), std::vector<std::string>{"(0,1)"}); }

TEST(Normalize, FromCanonicalRejectsMergeableParts) {
  EXPECT_THROW(IntervalSet::from_canonical({iv("(0,1/2]"), iv("(1/2,1)")}), std::invalid_argument);
  EXPECT_THROW(IntervalSet::from_canonical({iv("(1,2)"), iv("(0,1/2)")}), std::invalid_argument);
}

TEST(Normalize, IdempotentAndPointwiseFaithful) {
  Gen g(11);
  for (int i = 0; i < 500; ++i) {
    const auto raw = g.intervals(8);
    const IntervalSet s = normalize(raw);
    EXPECT_EQ(normalize(std::vector<Interval>(s.begin(), s.end())), s);
    std::set<Rational> pts;
    testing::add_endpoints(pts, raw);
    EXPECT_TRUE(testing::agrees(s, [&](const Rational& x) { return raw_member(raw, x); }, pts));
    for (const auto& x : testing::probe_points(pts)) EXPECT_EQ(s.contains(x), raw_member(raw, x));
  }
}

TEST(Affine, Examples) {
  EXPECT_EQ(affine(iv("(1/3,2/3)"), 1, q("-1/3")), IntervalSet(iv("(0,1/3)")));
  EXPECT_EQ(affine(iv("(0,1)"), -1, 0), IntervalSet(iv("(-1,0)")));
  EXPECT_EQ(affine(set_of({"[0,1/4)", "(1/2,1)"}), 2, 1).strs(), (std::vector<std::string>{"[1,3/2)", "(2,3)"}));
  EXPECT_EQ(affine(set_of({"[0,1/4)", "(1/2,1]"}), -1, 0).strs(), (std::vector<std::string>{"[-1,-1/2)", "(-1/4,0]"}));
  EXPECT_THROW(affine(iv("(0,1)"), 0, 1), std::invalid_argument);
}

TEST(Affine, PointwiseImage) {
  Gen g(12);
  for (int i = 0; i < 300; ++i) {
    const auto raw = g.intervals(6);
    Rational scale = g.rational(3, 5);
    if (scale.is_zero()) scale = 1;
    const Rational shift = g.rational();
    const IntervalSet img = affine(normalize(raw), scale, shift);
    std::set<Rational> pts;
    for (const auto& p : raw) {
      pts.insert(scale * p.lo() + shift);
      pts.insert(scale * p.hi() + shift);
    }
    const Membership pre = [&](const Rational& y) { return raw_member(raw, (y - shift) / scale); };
    EXPECT_TRUE(testing::agrees(img, pre, pts));
  }
}

TEST(SetOps, Examples) {
  EXPECT_EQ(complement_within(iv("(4/9,5/9)"), iv("[0,1]")).strs(), (std::vector<std::string>{"[0,4/9]", "[5/9,1]"}));
  EXPECT_EQ(intersect(IntervalSet(iv("(0,1/2)")), IntervalSet(iv("(1/4,1)"))), IntervalSet(iv("(1/4,1/2)")));
  EXPECT_EQ(set_union(IntervalSet(), IntervalSet(iv("[1/3,2/3]"))), IntervalSet(iv("[1/3,2/3]")));
  EXPECT_EQ(complement_within(iv("(0,1)"), iv("[0,1]")).strs(), (std::vector<std::string>{"[0,0]", "[1,1]"}));
  EXPECT_EQ(complement_within(IntervalSet(), iv("(0,1]")), IntervalSet(iv("(0,1]")));
}

TEST(SetOps, PointwiseAgainstRawLists) {
  Gen g(13);
  for (int i = 0; i < 500; ++i) {
    const auto ra = g.intervals(6);
    const auto rb = g.intervals(6);
    const Interval w = g.interval();
    const IntervalSet a = normalize(ra), b = normalize(rb);
    std::set<Rational> pts;
    testing::add_endpoints(pts, ra);
    testing::add_endpoints(pts, rb);
    pts.insert(w.lo());
    pts.insert(w.hi());
    auto in_a = [&](const Rational& x) { return raw_member(ra, x); };
    auto in_b = [&](const Rational& x) { return raw_member(rb, x); };
    EXPECT_TRUE(testing::agrees(set_union(a, b), [&](const Rational& x) { return in_a(x) || in_b(x); }, pts));
    EXPECT_TRUE(testing::agrees(intersect(a, b), [&](const Rational& x) { return in_a(x) && in_b(x); }, pts));
    EXPECT_TRUE(testing::agrees(difference(a, b), [&](const Rational& x) { return in_a(x) && !in_b(x); }, pts));
    EXPECT_TRUE(
        testing::agrees(complement_within(a, w), [&](const Rational& x) { return w.contains(x) && !in_a(x); }, pts));
    EXPECT_EQ(a.contains(b), intersect(a, b) == b);
  }
}

TEST(Measure, Examples) {
  EXPECT_EQ(measure(set_of({"(0,1/2)", "[1/2,1)"})), 1);
  EXPECT_EQ(measure(IntervalSet()), 0);
  EXPECT_EQ(measure(set_of({"[0,4/9]", "[5/9,1]"})), q("8/9"));
}

TEST(Measure, AdditiveAndIsometryInvariant) {
  Gen g(14);
  for (int i = 0; i < 300; ++i) {
    const IntervalSet a = g.set(6);
    const IntervalSet b = difference(g.set(6), a);
    EXPECT_EQ(measure(set_union(a, b)), measure(a) + measure(b));
    const Rational t = g.rational();
    EXPECT_EQ(measure(affine(a, 1, t)), measure(a));
    EXPECT_EQ(measure(affine(a, -1, t)), measure(a));
    // Independent oracle: sum of elementary pieces between endpoints whose midpoint is in a.
    std::set<Rational> pts;
    testing::add_endpoints(pts, a.parts());
    Rational m;
    for (auto it = pts.begin(); it != pts.end() && std::next(it) != pts.end(); ++it)
      if (raw_member(a.parts(), (*it + *std::next(it)) / 2)) m += *std::next(it) - *it;
    EXPECT_EQ(measure(a), m);
  }
}

TEST(LeftNeighborhood, Examples) {
  EXPECT_EQ(left_neighborhood(IntervalSet(iv("(1/3,2/3)")), q("1/6")), IntervalSet(iv("(1/6,2/3)")));
  EXPECT_EQ(left_neighborhood(set_of({"(0,1/4)", "(1/2,3/4)"}), q("1/8")).strs(),
            (std::vector<std::string>{"(-1/8,1/4)", "(3/8,3/4)"}));
  EXPECT_EQ(left_neighborhood(set_of({"(0,1/4)", "(1/2,3/4)"}), q("1/4")).strs(),
            (std::vector<std::string>{"(-1/4,1/4)", "(1/4,3/4)"}));
  EXPECT_THROW(left_neighborhood(IntervalSet(iv("(0,1)")), 0), std::invalid_argument);
}

TEST(Star, Examples) {
  EXPECT_EQ(star(iv("(1/3,2/3)")), iv("[1/3,2/3)"));
  EXPECT_EQ(star(set_of({"(0,1/4)", "(1/2,1)"})).strs(), (std::vector<std::string>{"[0,1/4)", "[1/2,1)"}));
  const std::vector<Interval> touching{iv("(0,1/2)"), iv("[1/2,1]")};
  EXPECT_THROW(star(std::span<const Interval>(touching)), std::invalid_argument);
  EXPECT_THROW(star(set_of({"(0,1/2)", "(1/2,1)"})), std::invalid_argument);
  EXPECT_THROW(star(iv("[1,1]")), std::invalid_argument);
}

TEST(KernelProperties, LeftNeighborhoodAndTranslation) {
  Gen g(15);
  for (int i = 0; i < 300; ++i) {
    EXPECT_TRUE(testing::neighborhood_of_interval(g));
    EXPECT_TRUE(testing::neighborhood_of_union(g));
    EXPECT_TRUE(testing::neighborhood_of_star(g));
    EXPECT_TRUE(testing::neighborhood_monotone_in_set(g));
    EXPECT_TRUE(testing::neighborhood_monotone_in_radius(g));
    EXPECT_TRUE(testing::translation_algebra(g));
  }
}

}  // namespace
}  // namespace affcopy
