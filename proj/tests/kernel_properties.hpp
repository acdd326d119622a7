#pragma once

// One randomized instance per call for each kernel identity. Shared by the
// unit suite and the acceptance runner so both exercise identical checks.

#include <set>

#include "test_support.hpp"

namespace affcopy::testing {

/// Pointwise definition of {x - t : x in parts, 0 <= t < r}.
inline Membership left_neighborhood_oracle(std::vector<Interval> parts, Rational r) {
  return [parts = std::move(parts), r = std::move(r)](const Rational& y) {
    for (const auto& p : parts) {
      // Some x in p with x - r < y <= x.
      const bool reach = p.lo() - r < y;
      const bool below = p.hi_closed() ? y <= p.hi() : y < p.hi();
      if (reach && below) return true;
    }
    return false;
  };
}

inline std::set<Rational> shifted_endpoints(std::span<const Interval> parts, const Rational& shift) {
  std::set<Rational> pts;
  for (const auto& p : parts) {
    pts.insert(p.lo());
    pts.insert(p.hi());
    pts.insert(p.lo() + shift);
    pts.insert(p.hi() + shift);
  }
  return pts;
}

// (i) B_-((a,b), r) = (a - r, b), and it contains [a,b).
inline bool neighborhood_of_interval(Gen& g) {
  const Interval iv = g.interval(true);
  const Rational r = g.positive();
  const IntervalSet got = left_neighborhood(IntervalSet(iv), r);
  return got == IntervalSet(Interval::open(iv.lo() - r, iv.hi())) && got.contains(star(iv)) &&
         left_neighborhood(iv, r) == Interval::open(iv.lo() - r, iv.hi());
}

// (ii) B_- commutes with unions, checked against the pointwise definition.
inline bool neighborhood_of_union(Gen& g) {
  const auto raw_a = g.intervals(5);
  const auto raw_b = g.intervals(5);
  const Rational r = g.positive();
  const IntervalSet a = normalize(raw_a), b = normalize(raw_b);
  const IntervalSet lhs = set_union(left_neighborhood(a, r), left_neighborhood(b, r));
  const IntervalSet rhs = left_neighborhood(set_union(a, b), r);
  std::vector<Interval> all(raw_a);
  all.insert(all.end(), raw_b.begin(), raw_b.end());
  return lhs == rhs && agrees(rhs, left_neighborhood_oracle(all, r), shifted_endpoints(all, -r));
}

// (iii) B_-(S, r) contains S* for open parts with disjoint closures.
inline bool neighborhood_of_star(Gen& g) {
  const IntervalSet s = g.separated_open_set(6);
  const Rational r = g.positive();
  const IntervalSet b = left_neighborhood(s, r);
  const IntervalSet st = star(s);
  return b.contains(st) && intersect(b, st) == st;
}

// (iv) monotone in S.
inline bool neighborhood_monotone_in_set(Gen& g) {
  const IntervalSet s1 = g.set(5);
  const IntervalSet s2 = set_union(s1, g.set(4));
  const Rational r = g.positive();
  return left_neighborhood(s2, r).contains(left_neighborhood(s1, r));
}

// (v) monotone in r.
inline bool neighborhood_monotone_in_radius(Gen& g) {
  const IntervalSet s = g.set(6);
  const Rational r = g.positive();
  const Rational bigger = r + g.positive();
  const IntervalSet small_b = left_neighborhood(s, r);
  const IntervalSet big_b = left_neighborhood(s, bigger);
  return big_b.contains(small_b) && set_union(small_b, big_b) == big_b;
}

// Translation commutes with complement, union and intersection.
inline bool translation_algebra(Gen& g) {
  const auto raw_a = g.intervals(5);
  const IntervalSet a = normalize(raw_a);
  const IntervalSet b = g.set(5);
  const Interval window = g.interval();
  const Rational t = g.rational();

  const bool complement_ok =
      translate(complement_within(a, window), t) == complement_within(translate(a, t), translate(window, t));
  const bool union_ok = translate(set_union(a, b), t) == set_union(translate(a, t), translate(b, t));
  const bool meet_ok = translate(intersect(a, b), t) == intersect(translate(a, t), translate(b, t));

  // Pointwise: y in A + t iff y - t in A.
  const Membership shifted = [&](const Rational& y) { return raw_member(raw_a, y - t); };
  const bool pointwise = agrees(translate(a, t), shifted, shifted_endpoints(raw_a, t));
  return complement_ok && union_ok && meet_ok && pointwise;
}

}  // namespace affcopy::testing
