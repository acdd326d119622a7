#pragma once

// The slowly decreasing sequence alpha built from gap-length tables, threshold
// indices, the disjoint/overlapping split of a union of left translates, and
// the truncated coverage check on [0,1).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "affcopy/cantor.hpp"
#include "affcopy/interval.hpp"
#include "affcopy/sequences.hpp"

namespace affcopy {

/// mu_n with breakpoints N_0 = 0, N_n = N_{n-1} + 1/mu_n. alpha runs linearly
/// from 1/n at m = N_{n-1}+1 towards 1/(n+1) at m = N_n + 1.
class SlowSequence {
 public:
  SlowSequence(std::vector<Rational> mu, std::vector<std::int64_t> breakpoints)
      : mu_(std::move(mu)), N_(std::move(breakpoints)) {}

  int levels() const { return static_cast<int>(mu_.size()); }
  const Rational& mu(int n) const { return mu_.at(static_cast<std::size_t>(n - 1)); }
  std::int64_t breakpoint(int n) const { return N_.at(static_cast<std::size_t>(n)); }
  const std::vector<std::int64_t>& breakpoints() const { return N_; }
  /// Largest m with alpha_m defined.
  std::int64_t horizon() const { return N_.back() + 1; }

  /// Block n with N_{n-1} < m <= N_n.
  int block_of(std::int64_t m) const {
    if (m < 1 || m > N_.back()) throw std::out_of_range("index " + std::to_string(m) + " outside 1.." + std::to_string(N_.back()));
    return static_cast<int>(std::lower_bound(N_.begin(), N_.end(), m) - N_.begin());
  }

  Rational alpha_at(std::int64_t m) const {
    if (m == horizon()) return reciprocal(static_cast<std::int64_t>(levels() + 1));
    const int n = block_of(m);
    const std::int64_t nn = n;
    const Rational step = Rational(1, nn) - Rational(1, nn + 1);
    return Rational(1, nn) - step * Rational(m - N_[n - 1] - 1, N_[n] - N_[n - 1]);
  }

  /// alpha_m - alpha_{m+1} = 1/(n(n+1)(N_n - N_{n-1})).
  Rational alpha_gap(std::int64_t m) const {
    const std::int64_t n = block_of(m);
    return reciprocal(big(n) * big(n + 1) * big(N_[n] - N_[n - 1]));
  }

  Sequence as_sequence() const {
    auto self = std::make_shared<const SlowSequence>(*this);
    return Sequence("alpha", [self](std::int64_t m) { return self->alpha_at(m); }, horizon(), false);
  }

 private:
  std::vector<Rational> mu_;
  std::vector<std::int64_t> N_;
};

using GapTables = std::map<std::int64_t, std::vector<Rational>>;

inline void validate_gap_table(std::int64_t k, const std::vector<Rational>& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].sign() <= 0 || t[i].numerator() != 1)
      throw std::invalid_argument("table k=" + std::to_string(k) + ": entry " + std::to_string(i + 1) + " = " +
                                  t[i].str() + " is not a unit fraction");
    if (i > 0 && !(t[i] < t[i - 1]))
      throw std::invalid_argument("table k=" + std::to_string(k) + " not strictly decreasing at n=" +
                                  std::to_string(i + 1));
  }
}

/// mu_n = min over tables with |k| <= n of l_n^{(k)}. Levels run while every
/// such table has an n-th entry and N_{n-1} < horizon.
inline SlowSequence build_mu(const GapTables& tables, std::int64_t horizon = presets::kUnbounded) {
  if (tables.empty()) throw std::invalid_argument("no gap tables");
  for (const auto& [k, t] : tables) validate_gap_table(k, t);
  std::vector<Rational> mu;
  std::vector<std::int64_t> N{0};
  for (std::int64_t n = 1; N.back() < horizon; ++n) {
    std::optional<Rational> m;
    bool complete = true;
    for (const auto& [k, t] : tables) {
      if ((k < 0 ? -k : k) > n) continue;
      if (static_cast<std::int64_t>(t.size()) < n) {
        complete = false;
        break;
      }
      const Rational& v = t[static_cast<std::size_t>(n - 1)];
      if (!m || v < *m) m = v;
    }
    if (!complete) break;
    if (!m) {
      if (n == 1) throw std::invalid_argument("mu_1 needs a table with |k| <= 1");
      break;
    }
    if (!mu.empty() && !(*m < mu.back())) throw std::logic_error("mu not strictly decreasing at n=" + std::to_string(n));
    const std::int64_t step = to_int64(m->denominator());
    if (N.back() > std::numeric_limits<std::int64_t>::max() - step) throw std::overflow_error("breakpoint overflow");
    mu.push_back(*m);
    N.push_back(N.back() + step);
  }
  if (mu.empty()) throw std::invalid_argument("gap tables too short for a single level");
  return SlowSequence(std::move(mu), std::move(N));
}

/// Least m in [m0, last] with delta * gap(m) < l, for gaps non-increasing in
/// m. Gallops then bisects.
inline std::int64_t threshold_index(const std::function<Rational(std::int64_t)>& gap, const Rational& delta,
                                    std::int64_t m0, const Rational& l, std::int64_t last) {
  if (delta.sign() <= 0 || l.sign() <= 0) throw std::invalid_argument("threshold needs delta > 0 and l > 0");
  if (m0 < 1) throw std::invalid_argument("m0 must be positive");
  auto below = [&](std::int64_t m) { return delta * gap(m) < l; };
  if (m0 > last) throw std::out_of_range("threshold search range empty");
  if (below(m0)) return m0;
  std::int64_t lo = m0;  // !below(lo)
  std::int64_t step = 1;
  std::int64_t hi = 0;
  while (true) {
    const std::int64_t probe = (last - lo > step) ? lo + step : last;
    if (below(probe)) {
      hi = probe;
      break;
    }
    if (probe == last) throw std::out_of_range("threshold not reached by index " + std::to_string(last));
    lo = probe;
    step *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (below(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

struct TranslateDecomposition {
  std::int64_t M = 0;
  IntervalSet U1;         // I - delta s_m for m0 <= m < M, pairwise disjoint
  Interval U2_truncated;  // union for M <= m <= last
  Interval U2_limit;      // B_-(I, delta s_M)
};

/// Splits the union of I - delta*s_m (m0 <= m <= last) at the threshold M.
inline TranslateDecomposition decompose_translates(const Interval& I, const Sequence& s, const Rational& delta,
                                                   std::int64_t m0, std::int64_t last) {
  if (!I.is_open() || I.degenerate()) throw std::invalid_argument("source interval must be open, got " + I.str());
  if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
  if (m0 < 1 || last <= m0) throw std::invalid_argument("need 1 <= m0 < last");
  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(last - m0 + 1));
  for (std::int64_t m = m0; m <= last; ++m) v.push_back(s(m));
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) throw std::invalid_argument(s.name() + " not strictly decreasing at m=" + std::to_string(m0 + static_cast<std::int64_t>(i)));
    if (i + 1 < v.size() && v[i] - v[i + 1] > v[i - 1] - v[i])
      throw std::invalid_argument(s.name() + " gaps increase at m=" + std::to_string(m0 + static_cast<std::int64_t>(i)));
  }
  auto at = [&](std::int64_t m) -> const Rational& { return v[static_cast<std::size_t>(m - m0)]; };
  const Rational l = I.length();
  const std::int64_t M =
      threshold_index([&](std::int64_t m) { return at(m) - at(m + 1); }, delta, m0, l, last - 1);
  std::vector<Interval> u1;
  for (std::int64_t m = m0; m < M; ++m) u1.push_back(translate(I, -delta * at(m)));
  return {M, IntervalSet::from_canonical(std::move(u1)),
          Interval::open(I.lo() - delta * at(M), I.hi() - delta * at(last)),
          left_neighborhood(I, delta * at(M))};
}

/// Union of the translates I - shift for shifts given in decreasing order, by
/// a single left-to-right merge.
inline IntervalSet union_of_translates(const Interval& I, const std::vector<Rational>& shifts) {
  std::vector<Interval> out;
  for (const auto& sh : shifts) {
    Interval t = translate(I, -sh);
    if (!out.empty() && detail::mergeable(out.back(), t)) out.back() = detail::hull_pair(out.back(), t);
    else out.push_back(std::move(t));
  }
  return normalize(std::move(out));
}

struct DddRow {
  int n = 0;
  std::int64_t M = 0;
  Rational alpha_M;
  std::int64_t N_n = 0;
  bool ok = false;
};

struct DddReport {
  int n0 = 0;
  int n1 = 0;
  std::vector<DddRow> rows;
  bool pass() const { return std::all_of(rows.begin(), rows.end(), [](const DddRow& r) { return r.ok; }); }
};

/// For n0 <= n <= n_hi: alpha_{M(n)} >= 1/(n+1) and M(n) <= N_n, where M(n)
/// is the threshold for l_n of the construction and n0 is the least integer
/// exceeding max{1/delta, |k|, n1}, n1 the least n with N_n >= m0.
inline DddReport verify_ddd(const CantorConstruction& c, const SlowSequence& s, const Rational& delta, std::int64_t m0,
                            std::int64_t k, int n_hi) {
  if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
  if (n_hi > c.depth || n_hi > s.levels())
    throw std::invalid_argument("n range exceeds construction depth or sequence levels");
  DddReport r;
  r.n1 = 1;
  while (r.n1 <= s.levels() && s.breakpoint(r.n1) < m0) ++r.n1;
  if (r.n1 > s.levels()) throw std::invalid_argument("sequence breakpoints never reach m0");
  Rational floor_bound = max(max(1 / delta, Rational(k < 0 ? -k : k)), Rational(r.n1));
  r.n0 = static_cast<int>(to_int64(floor_bound.floor()) + 1);
  for (int n = r.n0; n <= n_hi; ++n) {
    DddRow row;
    row.n = n;
    row.N_n = s.breakpoint(n);
    const std::int64_t last = s.horizon() - 1;
    row.M = threshold_index([&](std::int64_t m) { return s.alpha_gap(m); }, delta, m0, c.level(n).l, last);
    row.alpha_M = s.alpha_at(row.M);
    row.ok = row.M <= row.N_n && row.alpha_M >= reciprocal(static_cast<std::int64_t>(n + 1));
    r.rows.push_back(row);
  }
  return r;
}

struct DeficitReport {
  int N = 0;
  std::int64_t M = 0;
  Rational delta;
  Rational uncovered_measure;
  Rational residual_measure;
  IntervalSet residual;
  Rational bound;
  bool pass() const { return uncovered_measure < bound; }
};

/// C = union over n <= N and m0 <= m <= M of O_n - delta*alpha_m. Reports the
/// measure of [0,1) \ C and of [0,1) intersected with every (R_N - delta*alpha_m),
/// R_N the stage-N remnants. The bound is 2^N (2/3)^depth.
inline DeficitReport coverage01(const CantorConstruction& c, const SlowSequence& s, const Rational& delta,
                                std::int64_t m0, int N, std::int64_t M) {
  if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
  if (N < 1 || N > c.depth) throw std::invalid_argument("N must lie in 1..depth");
  if (m0 < 1 || M < m0 || M > s.horizon()) throw std::invalid_argument("need 1 <= m0 <= M <= horizon");
  std::vector<Rational> shifts;
  shifts.reserve(static_cast<std::size_t>(M - m0 + 1));
  for (std::int64_t m = m0; m <= M; ++m) shifts.push_back(delta * s.alpha_at(m));

  std::vector<Interval> covered;
  for (int n = 1; n <= N; ++n)
    for (const auto& I : c.level(n).gaps) {
      const IntervalSet u = union_of_translates(I, shifts);
      covered.insert(covered.end(), u.begin(), u.end());
    }
  const Interval unit = Interval::closed_open(0, 1);
  DeficitReport r;
  r.N = N;
  r.M = M;
  r.delta = delta;
  r.uncovered_measure = measure(complement_within(normalize(std::move(covered)), unit));

  const IntervalSet remnants = IntervalSet::from_canonical(c.level(N).remnants);
  IntervalSet residual(unit);
  for (const auto& sh : shifts) {
    residual = intersect(residual, translate(remnants, -sh));
    if (residual.empty()) break;
  }
  r.residual = residual;
  r.residual_measure = measure(residual);
  r.bound = Rational(std::int64_t{1} << N) * pow(Rational(2, 3), static_cast<unsigned long>(c.depth));
  return r;
}

/// Gap table l_1..l_depth of a construction.
inline std::vector<Rational> gap_lengths(const CantorConstruction& c) {
  std::vector<Rational> out;
  for (const auto& lev : c.levels) out.push_back(lev.l);
  return out;
}

}  // namespace affcopy
