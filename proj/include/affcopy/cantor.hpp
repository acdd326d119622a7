#pragma once

// Cantor-like ladder: at level n every remnant K_{n-1,j} loses an open gap
// I_{n,j} from its closed middle third, all gaps of a level sharing a length
// l_n = 1/m. Remnants K_{n,j} are indexed left to right from 1; K_{0,1} = [0,1]
// and I_{n,j} sits inside K_{n-1,j}, between its children K_{n,2j-1}, K_{n,2j}.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affcopy/interval.hpp"

namespace affcopy {

struct GapOracle {
  std::string name;
  /// Open interval inside the closed middle third of the closed interval K.
  std::function<Interval(const Interval& K)> propose;
  /// Whether an open interval misses the target set; empty when the target
  /// cannot be checked.
  std::function<bool(const Interval&)> avoids;
};

inline Interval closed_middle_third(const Interval& K) {
  const Rational third = K.length() / 3;
  return Interval::closed(K.lo() + third, K.lo() + 2 * third);
}

namespace oracles {

/// Target A empty: the open middle third of the closed middle third.
inline GapOracle middle_splitter() {
  return {"middle",
          [](const Interval& K) {
            const Rational ninth = K.length() / 9;
            return Interval::open(K.lo() + 4 * ninth, K.lo() + 5 * ninth);
          },
          {}};
}

/// Removed gap of the ternary Cantor set containing x, or nullopt when x lies
/// in the set (or outside [0,1]).
inline std::optional<Interval> ternary_gap_containing(const Rational& x) {
  if (x < 0 || x > 1) return std::nullopt;
  const Rational third(1, 3), two_thirds(2, 3);
  Rational y = x, offset = 0, scale = 1;  // x = offset + scale * y
  std::set<Rational> seen;
  while (seen.insert(y).second) {
    if (third < y && y < two_thirds)
      return Interval::open(offset + scale * third, offset + scale * two_thirds);
    scale /= 3;
    if (y <= third) {
      y *= 3;
    } else {
      offset += 2 * scale;
      y = 3 * y - 2;
    }
  }
  return std::nullopt;
}

inline bool in_ternary_cantor(const Rational& x) { return x >= 0 && x <= 1 && !ternary_gap_containing(x); }

/// Target A = ternary Cantor set. Searches surviving triadic intervals meeting
/// the middle third of K breadth first and returns the first removed gap's
/// overlap with the open middle third.
inline GapOracle ternary_cantor_avoider() {
  auto propose = [](const Interval& K) {
    const Interval mid = closed_middle_third(K);
    std::vector<Interval> frontier{Interval::closed(0, 1)};
    for (int level = 0; level < 4096 && !frontier.empty(); ++level) {
      std::vector<Interval> next;
      for (const auto& s : frontier) {
        const Rational third = s.length() / 3;
        const Interval gap = Interval::open(s.lo() + third, s.lo() + 2 * third);
        const Rational lo = max(gap.lo(), mid.lo());
        const Rational hi = min(gap.hi(), mid.hi());
        if (lo < hi) return Interval::open(lo, hi);
        for (auto child : {Interval::closed(s.lo(), s.lo() + third), Interval::closed(s.hi() - third, s.hi())})
          if (child.hi() > mid.lo() && child.lo() < mid.hi()) next.push_back(child);
      }
      frontier = std::move(next);
    }
    throw std::runtime_error("ternary oracle found no gap in middle third of " + K.str());
  };
  auto avoids = [](const Interval& I) {
    const auto gap = ternary_gap_containing(I.midpoint());
    return gap && gap->contains(I);
  };
  return {"ternary", propose, avoids};
}

/// Target A = a finite point set: the longest piece of the open middle third
/// of the middle third that avoids every point (leftmost on ties).
inline GapOracle point_set_avoider(std::vector<Rational> points) {
  std::sort(points.begin(), points.end());
  auto propose = [points](const Interval& K) {
    const Rational ninth = K.length() / 9;
    const Rational lo = K.lo() + 4 * ninth, hi = K.lo() + 5 * ninth;
    std::vector<Rational> cuts{lo};
    for (const auto& p : points)
      if (lo < p && p < hi) cuts.push_back(p);
    cuts.push_back(hi);
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] - cuts[i] > cuts[best + 1] - cuts[best]) best = i;
    return Interval::open(cuts[best], cuts[best + 1]);
  };
  auto avoids = [points](const Interval& I) {
    return std::none_of(points.begin(), points.end(), [&](const Rational& p) { return I.contains(p); });
  };
  return {"points", propose, avoids};
}

}  // namespace oracles

struct CantorLevel {
  int n = 0;
  Rational l;
  std::vector<Interval> gaps;      // I_{n,1..2^{n-1}}
  std::vector<Interval> remnants;  // K_{n,1..2^n}
};

struct CantorConstruction {
  int depth = 0;
  std::string oracle;
  std::vector<CantorLevel> levels;  // levels[n-1] is level n

  const CantorLevel& level(int n) const { return levels.at(static_cast<std::size_t>(n - 1)); }
  const Interval& gap(int n, std::int64_t j) const { return level(n).gaps.at(static_cast<std::size_t>(j - 1)); }
  Interval remnant(int n, std::int64_t j) const {
    if (n == 0) {
      if (j != 1) throw std::out_of_range("K_{0,j} exists only for j = 1");
      return Interval::closed(0, 1);
    }
    return level(n).remnants.at(static_cast<std::size_t>(j - 1));
  }
  /// O_n as an IntervalSet.
  IntervalSet gap_set(int n) const { return IntervalSet::from_canonical(level(n).gaps); }
};

/// Largest 1/m (m a positive integer) not exceeding x > 0.
inline Rational largest_unit_fraction_below(const Rational& x) {
  if (x.sign() <= 0) throw std::invalid_argument("unit fraction bound must be positive");
  return reciprocal((1 / x).ceil());
}

inline std::string level_index(int n, std::int64_t j) {
  return "(n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")";
}

inline CantorConstruction build_cantor(const GapOracle& oracle, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  CantorConstruction c;
  c.depth = depth;
  c.oracle = oracle.name;
  std::vector<Interval> parents{Interval::closed(0, 1)};
  std::optional<Rational> prev_l;
  for (int n = 1; n <= depth; ++n) {
    std::vector<Interval> raw;
    raw.reserve(parents.size());
    Rational cap = prev_l ? *prev_l / 2 : Rational(1);
    for (std::size_t j = 0; j < parents.size(); ++j) {
      const Interval I = oracle.propose(parents[j]);
      const auto where = level_index(n, static_cast<std::int64_t>(j + 1));
      if (!I.is_open() || I.degenerate()) throw std::runtime_error("oracle returned a non-open gap at " + where);
      if (!closed_middle_third(parents[j]).contains(I))
        throw std::runtime_error("oracle gap " + I.str() + " leaves the middle third of " + parents[j].str() + " at " +
                                 where);
      if (oracle.avoids && !oracle.avoids(I))
        throw std::runtime_error("oracle gap " + I.str() + " meets the target set at " + where);
      cap = min(cap, I.length());
      raw.push_back(I);
    }
    CantorLevel lev;
    lev.n = n;
    lev.l = largest_unit_fraction_below(cap);
    lev.gaps.reserve(raw.size());
    lev.remnants.reserve(2 * raw.size());
    const Rational half = lev.l / 2;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      const Rational mid = raw[j].midpoint();
      Interval g = Interval::open(mid - half, mid + half);
      lev.remnants.push_back(Interval::closed(parents[j].lo(), g.lo()));
      lev.remnants.push_back(Interval::closed(g.hi(), parents[j].hi()));
      lev.gaps.push_back(std::move(g));
    }
    prev_l = lev.l;
    parents = lev.remnants;
    c.levels.push_back(std::move(lev));
  }
  return c;
}

struct Violation {
  std::string check;
  int n = 0;
  std::int64_t j = 0;
  std::string detail;
};

struct InvariantReport {
  std::vector<Violation> violations;
  std::map<std::string, std::int64_t> checks;  // check name -> instances evaluated
  bool pass() const { return violations.empty(); }
  std::int64_t count(const std::string& name) const {
    auto it = checks.find(name);
    return it == checks.end() ? 0 : it->second;
  }
};

namespace detail {

class ReportBuilder {
 public:
  explicit ReportBuilder(InvariantReport& r) : r_(r) {}
  void expect(bool ok, const std::string& check, int n, std::int64_t j, const std::string& detail = {}) {
    ++r_.checks[check];
    if (!ok) r_.violations.push_back({check, n, j, detail});
  }

 private:
  InvariantReport& r_;
};

}  // namespace detail

/// Checks, level by level: the structural invariants, monotone infima of the
/// rightmost descendants up to k_max generations, the left-neighbourhood
/// covering of each gap's parent, the adjacency sup I = inf K of right
/// children, the telescoping union over k <= k_max, and (when `oracle` has a
/// checkable target) that no gap meets the target.
inline InvariantReport verify_cantor(const CantorConstruction& c, int k_max, const GapOracle* oracle = nullptr) {
  InvariantReport report;
  detail::ReportBuilder rb(report);
  const Rational two_thirds(2, 3);
  if (static_cast<int>(c.levels.size()) != c.depth) {
    rb.expect(false, "shape", 0, 0, "levels stored: " + std::to_string(c.levels.size()));
    return report;
  }
  std::vector<Interval> cumulative_gaps;
  for (int n = 1; n <= c.depth; ++n) {
    const CantorLevel& lev = c.level(n);
    const auto expected_gaps = std::int64_t{1} << (n - 1);
    rb.expect(lev.n == n && static_cast<std::int64_t>(lev.gaps.size()) == expected_gaps &&
                  static_cast<std::int64_t>(lev.remnants.size()) == 2 * expected_gaps,
              "counts", n, 0);
    if (static_cast<std::int64_t>(lev.gaps.size()) != expected_gaps ||
        static_cast<std::int64_t>(lev.remnants.size()) != 2 * expected_gaps)
      return report;

    rb.expect(lev.l.sign() > 0 && lev.l.numerator() == 1, "unit_length", n, 0, "l=" + lev.l.str());
    if (n > 1) rb.expect(lev.l <= c.level(n - 1).l / 2, "length_halving", n, 0, "l=" + lev.l.str());

    const Rational bound = pow(two_thirds, static_cast<unsigned long>(n));
    for (std::int64_t j = 1; j <= expected_gaps; ++j) {
      const Interval& I = c.gap(n, j);
      const Interval K = c.remnant(n - 1, j);
      rb.expect(I.is_open() && I.length() == lev.l, "gap_length", n, j, I.str());
      rb.expect(closed_middle_third(K).contains(I), "middle_third", n, j, I.str() + " in " + K.str());
      rb.expect(c.remnant(n, 2 * j - 1) == Interval::closed(K.lo(), I.lo()) &&
                    c.remnant(n, 2 * j) == Interval::closed(I.hi(), K.hi()),
                "children", n, j);
      rb.expect(I.hi() == c.remnant(n, 2 * j).lo(), "adjacency", n, j);
      const Interval cover = left_neighborhood(I, two_thirds * K.length());
      rb.expect(IntervalSet(cover).contains(Interval::closed_open(K.lo(), I.hi())), "left_cover", n, j,
                cover.str() + " vs [" + K.lo().str() + "," + I.hi().str() + ")");
      if (oracle && oracle->avoids) rb.expect(oracle->avoids(I), "avoids_target", n, j, I.str());
    }
    for (std::int64_t j = 1; j <= 2 * expected_gaps; ++j) {
      const Interval K = c.remnant(n, j);
      rb.expect(K.is_closed() && !K.degenerate() && K.length() < bound, "remnant_length", n, j, K.str());
    }

    cumulative_gaps.insert(cumulative_gaps.end(), lev.gaps.begin(), lev.gaps.end());
    const IntervalSet left = complement_within(normalize(cumulative_gaps), Interval::closed(0, 1));
    rb.expect(left == normalize(lev.remnants) && left.size() == lev.remnants.size(), "partition", n, 0);
  }

  // Closures of all gaps, across every level, pairwise disjoint.
  std::sort(cumulative_gaps.begin(), cumulative_gaps.end(), detail::starts_before);
  for (std::size_t i = 1; i < cumulative_gaps.size(); ++i)
    rb.expect(cumulative_gaps[i - 1].hi() < cumulative_gaps[i].lo(), "closures_disjoint", 0,
              static_cast<std::int64_t>(i), cumulative_gaps[i - 1].str() + " " + cumulative_gaps[i].str());

  for (int n = 1; n < c.depth; ++n) {
    const int kk = std::min(k_max, c.depth - n);
    for (std::int64_t j = 1; j <= (std::int64_t{1} << n); ++j) {
      const Interval K = c.remnant(n, j);
      Rational prev_inf = K.lo();
      IntervalSet tele;
      for (int k = 1; k <= kk; ++k) {
        const Interval D = c.remnant(n + k, j << k);
        const Rational gap_bound = pow(two_thirds, static_cast<unsigned long>(n + k));
        rb.expect(prev_inf <= D.lo() && D.hi() == K.hi() && K.hi() - D.lo() < gap_bound, "rightmost_descendant",
                  n + k, j << k, D.str());
        prev_inf = D.lo();

        const Interval I = c.gap(n + k, j << (k - 1));
        const Interval parent = c.remnant(n + k - 1, j << (k - 1));
        tele = set_union(tele, IntervalSet(left_neighborhood(I, two_thirds * parent.length())));
        // The union reaches left of inf K_{n,j}; inside [inf K_{n,j}, sup K_{n,j}] it is exactly
        // [inf K_{n,j}, inf K_{n+k,2^k j}).
        const IntervalSet expected(Interval::closed_open(K.lo(), D.lo()));
        rb.expect(tele.size() == 1 && tele.contains(expected) && intersect(tele, IntervalSet(K)) == expected,
                  "telescoping", n, j, "k=" + std::to_string(k));
      }
    }
  }
  return report;
}

struct CoverReport {
  int N = 0;
  int k_max = 0;
  IntervalSet uncovered;
  Rational uncovered_measure;
  Rational bound;
  bool within_tails = false;  // uncovered part inside the rightmost-descendant tails
  bool pass() const { return within_tails && uncovered_measure < bound; }
};

/// Remainder of the stage-N remnants (starred) after removing the left
/// (2/3)^n-neighbourhoods of O_n for N < n <= N + k_max.
inline CoverReport truncated_union_cover(const CantorConstruction& c, int N, int k_max) {
  if (N < 1 || k_max < 1) throw std::invalid_argument("N and k_max must be positive");
  if (N >= c.depth || N + k_max > c.depth)
    throw std::invalid_argument("construction depth " + std::to_string(c.depth) + " too small for N=" +
                                std::to_string(N) + ", k_max=" + std::to_string(k_max));
  const Rational two_thirds(2, 3);
  std::vector<Interval> covered;
  for (int n = N + 1; n <= N + k_max; ++n) {
    const IntervalSet b = left_neighborhood(c.gap_set(n), pow(two_thirds, static_cast<unsigned long>(n)));
    covered.insert(covered.end(), b.begin(), b.end());
  }
  const IntervalSet D = normalize(std::move(covered));
  const IntervalSet T = star(std::span<const Interval>(c.level(N).remnants));

  std::vector<Interval> tails;
  for (std::int64_t j = 1; j <= (std::int64_t{1} << N); ++j)
    tails.push_back(Interval::closed_open(c.remnant(N + k_max, j << k_max).lo(), c.remnant(N, j).hi()));

  CoverReport r;
  r.N = N;
  r.k_max = k_max;
  r.uncovered = difference(T, D);
  r.uncovered_measure = measure(r.uncovered);
  r.bound = Rational(std::int64_t{1} << N) * pow(two_thirds, static_cast<unsigned long>(N + k_max));
  r.within_tails = normalize(std::move(tails)).contains(r.uncovered);
  return r;
}

}  // namespace affcopy
