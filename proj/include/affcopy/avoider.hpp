#pragma once

// Closed nowhere dense avoider A = [0,1] \ union of holes J_n, one per basic
// interval V_n, sized from a threshold sequence, and a finder for an affine
// copy t + delta*alpha inside the depth-N truncation.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affcopy/interval.hpp"
#include "affcopy/sequences.hpp"
#include "affcopy/slow_sequence.hpp"

namespace affcopy {

/// eta_1 = beta_1, eta_2 = beta_2, eta_m = max(beta_m, 2 eta_{m-1} - eta_{m-2}).
/// Values are materialized up to a cap; when beta is declared convex and the
/// last two materialized values coincide with beta, eta equals beta from there
/// on and the horizon extends to beta's.
class ThresholdSequence {
 public:
  ThresholdSequence(Sequence beta, std::vector<Rational> prefix, bool tail_is_beta, std::int64_t horizon)
      : beta_(std::move(beta)),
        prefix_(std::make_shared<const std::vector<Rational>>(std::move(prefix))),
        tail_is_beta_(tail_is_beta),
        horizon_(horizon) {}

  const Sequence& beta() const { return beta_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t materialized() const { return static_cast<std::int64_t>(prefix_->size()); }
  bool tail_is_beta() const { return tail_is_beta_; }

  Rational eta(std::int64_t m) const {
    if (m < 1 || m > horizon_)
      throw std::out_of_range("eta index " + std::to_string(m) + " outside 1.." + std::to_string(horizon_));
    if (m <= materialized()) return (*prefix_)[static_cast<std::size_t>(m - 1)];
    return beta_(m);
  }
  Rational gap(std::int64_t m) const { return eta(m) - eta(m + 1); }

  Sequence as_sequence() const {
    auto self = std::make_shared<const ThresholdSequence>(*this);
    return Sequence("eta(" + beta_.name() + ")", [self](std::int64_t m) { return self->eta(m); }, horizon_, true);
  }

 private:
  Sequence beta_;
  std::shared_ptr<const std::vector<Rational>> prefix_;
  bool tail_is_beta_;
  std::int64_t horizon_;
};

inline ThresholdSequence thresholdize(const Sequence& beta, std::int64_t horizon, std::int64_t materialize_cap = 1 << 16) {
  horizon = std::min(horizon, beta.horizon());
  if (horizon < 2) throw std::invalid_argument("threshold sequence needs horizon >= 2");
  const std::int64_t count = std::min(horizon, materialize_cap);
  std::vector<Rational> eta;
  eta.reserve(static_cast<std::size_t>(count));
  Rational prev_beta;
  for (std::int64_t m = 1; m <= count; ++m) {
    Rational b = beta(m);
    if (b.sign() <= 0) throw std::invalid_argument(beta.name() + " not positive at m=" + std::to_string(m));
    if (m > 1 && !(b < prev_beta))
      throw std::invalid_argument(beta.name() + " not strictly decreasing at m=" + std::to_string(m));
    prev_beta = b;
    if (m <= 2) {
      eta.push_back(std::move(b));
    } else {
      Rational line = 2 * eta[eta.size() - 1] - eta[eta.size() - 2];
      eta.push_back(max(b, line));
    }
  }
  const bool tail = beta.convex() && count >= 2 && eta[eta.size() - 1] == beta(count) &&
                    eta[eta.size() - 2] == beta(count - 1);
  const std::int64_t effective = tail ? horizon : count;
  return ThresholdSequence(beta, std::move(eta), tail, effective);
}

inline ThresholdSequence thresholdize(const Sequence& beta) { return thresholdize(beta, beta.horizon()); }

/// eta >= beta, strictly decreasing, non-increasing gaps, over 1..upto.
inline bool threshold_invariants_hold(const ThresholdSequence& t, std::int64_t upto) {
  for (std::int64_t m = 1; m <= upto; ++m) {
    if (t.eta(m) < t.beta()(m)) return false;
    if (m + 1 <= upto && !(t.eta(m + 1) < t.eta(m))) return false;
    if (m + 2 <= upto && t.gap(m + 1) > t.gap(m)) return false;
  }
  return true;
}

struct ConvergenceReport {
  std::int64_t last_touch = 0;        // largest m <= horizon with eta_m = beta_m
  bool touches_in_final_tenth = false;
  Rational final_gap;                 // eta_{H-1} - eta_H
  std::optional<BigInt> progression_zero;  // index where the final arithmetic progression would reach 0
};

/// Finite evidence for eta -> 0: either eta rejoins beta late in the horizon or
/// the final arithmetic progression would cross 0 at a computable index.
inline ConvergenceReport convergence_report(const ThresholdSequence& t) {
  const std::int64_t H = t.tail_is_beta() ? t.materialized() : t.horizon();
  ConvergenceReport r;
  for (std::int64_t m = H; m >= 1; --m)
    if (t.eta(m) == t.beta()(m)) {
      r.last_touch = m;
      break;
    }
  r.touches_in_final_tenth = t.tail_is_beta() || 10 * r.last_touch >= 9 * H;
  r.final_gap = t.eta(H - 1) - t.eta(H);
  if (r.final_gap.sign() > 0) r.progression_zero = big(H) + (t.eta(H) / r.final_gap).ceil();
  return r;
}

/// Basic open interval number n >= 1: level L = 1, 2, ... contributes centres
/// i/2^L (0 < i < 2^L) with radius 1/2^{L+1}, ordered by (L, i).
inline Interval enumerate_base(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("base index must be positive");
  int L = 1;
  std::int64_t before = 0;  // intervals on levels < L
  while (n > before + ((std::int64_t{1} << L) - 1)) {
    before += (std::int64_t{1} << L) - 1;
    ++L;
  }
  const std::int64_t i = n - before;
  const BigInt denom = BigInt(1) << static_cast<mp_bitcnt_t>(L);
  const Rational centre(big(i), denom);
  const Rational radius(BigInt(1), denom * 2);
  return Interval::open(max(Rational(0), centre - radius), min(Rational(1), centre + radius));
}

struct Budget {
  std::int64_t n = 0;
  std::int64_t K = 0;
  Rational lambda;
  std::int64_t T = 0;
};

/// K(n) = 2 min{m : eta_m < n^-2}, lambda_n = min{|V_n|, 2^-n, eta_K - eta_{K+1}},
/// T(n) = min{m : eta_m - eta_{m+1} < lambda_n}.
inline Budget plan_budget(const ThresholdSequence& t, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("budget index must be positive");
  const Rational target = Rational(BigInt(1), big(n) * big(n));
  Budget b;
  b.n = n;
  b.K = 2 * threshold_index([&](std::int64_t m) { return t.eta(m); }, 1, 1, target, t.horizon());
  if (b.K + 1 > t.horizon()) throw std::out_of_range("horizon too short for K(" + std::to_string(n) + ")");
  const Rational pow2 = Rational(BigInt(1), BigInt(1) << static_cast<mp_bitcnt_t>(n));
  b.lambda = min(min(enumerate_base(n).length(), pow2), t.gap(b.K));
  b.T = threshold_index([&](std::int64_t m) { return t.gap(m); }, 1, 1, b.lambda, t.horizon() - 1);
  if (b.T <= b.K) throw std::logic_error("T(n) <= K(n) at n=" + std::to_string(n));
  return b;
}

struct Hole {
  Budget budget;
  Interval V;
  Interval J;
};

struct AvoiderConstruction {
  int depth = 0;
  std::vector<Hole> holes;
  IntervalSet avoider;  // [0,1] minus the open holes
};

inline AvoiderConstruction build_avoider(const ThresholdSequence& t, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  AvoiderConstruction a;
  a.depth = depth;
  std::vector<Interval> js;
  for (std::int64_t n = 1; n <= depth; ++n) {
    Budget b = plan_budget(t, n);
    Interval V = enumerate_base(n);
    const Rational mid = V.midpoint();
    Interval J = Interval::open(mid - b.lambda / 2, mid + b.lambda / 2);
    js.push_back(J);
    a.holes.push_back({std::move(b), std::move(V), std::move(J)});
  }
  a.avoider = complement_within(normalize(std::move(js)), Interval::closed(0, 1));
  return a;
}

struct UnionMeasure {
  std::int64_t T = 0;
  Rational kernel;       // measure of the union of J - eta_m, m <= M
  Rational closed_form;  // T lambda + eta_T - eta_M
  Rational limit;        // T lambda + eta_T
  bool identity_holds() const { return kernel == closed_form; }
};

inline UnionMeasure measure_union_translates(const Interval& J, const ThresholdSequence& t, std::int64_t M) {
  if (!J.is_open() || J.degenerate()) throw std::invalid_argument("J must be a nondegenerate open interval");
  const Rational lambda = J.length();
  UnionMeasure u;
  u.T = threshold_index([&](std::int64_t m) { return t.gap(m); }, 1, 1, lambda, t.horizon() - 1);
  if (M < u.T) throw std::invalid_argument("M=" + std::to_string(M) + " below threshold T=" + std::to_string(u.T));
  std::vector<Rational> shifts;
  shifts.reserve(static_cast<std::size_t>(M));
  for (std::int64_t m = 1; m <= M; ++m) shifts.push_back(t.eta(m));
  u.kernel = measure(union_of_translates(J, shifts));
  u.limit = Rational(u.T) * lambda + t.eta(u.T);
  u.closed_form = u.limit - t.eta(M);
  return u;
}

struct SummabilityRow {
  Budget budget;
  Rational eta_half_T;  // eta_{floor(T/2)}
  Rational eta_half_K;  // eta_{K/2}
  Rational inv_square;  // n^-2
  Rational T_lambda;
  Rational telescope;   // 2 eta_{floor(T/2)} - 2 eta_T
  bool ok = false;
};

struct SummabilityReport {
  std::vector<SummabilityRow> rows;
  Rational sum_eta_half_T;
  Rational sum_inv_square;
  Rational sum_measure;  // sum of T lambda + eta_T
  bool pass() const { return std::all_of(rows.begin(), rows.end(), [](const SummabilityRow& r) { return r.ok; }); }
};

inline SummabilityReport summability_report(const ThresholdSequence& t, int depth) {
  SummabilityReport rep;
  for (std::int64_t n = 1; n <= depth; ++n) {
    SummabilityRow r;
    r.budget = plan_budget(t, n);
    const auto& b = r.budget;
    r.eta_half_T = t.eta(b.T / 2);
    r.eta_half_K = t.eta(b.K / 2);
    r.inv_square = Rational(BigInt(1), big(n) * big(n));
    r.T_lambda = Rational(b.T) * b.lambda;
    r.telescope = 2 * r.eta_half_T - 2 * t.eta(b.T);
    r.ok = b.K % 2 == 0 && r.eta_half_T <= r.eta_half_K && r.eta_half_K < r.inv_square && r.T_lambda <= r.telescope;
    rep.sum_eta_half_T += r.eta_half_T;
    rep.sum_inv_square += r.inv_square;
    rep.sum_measure += r.T_lambda + t.eta(b.T);
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

/// Largest delta0 with |alpha_m| <= eta_m / (2 delta0) for m <= alpha.size();
/// nullopt when every alpha_m is zero.
inline std::optional<Rational> delta0_of(const std::vector<Rational>& alpha, const ThresholdSequence& t) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i].is_zero()) continue;
    const Rational v = t.eta(static_cast<std::int64_t>(i + 1)) / (2 * abs(alpha[i]));
    if (!best || v < *best) best = v;
  }
  return best;
}

struct EmbeddingStep {
  Rational delta;
  Rational measure;
};

struct EmbeddingCertificate {
  Rational delta;
  Rational t;
  std::int64_t checked_points = 0;
  Rational residual_measure;
  int ladder_index = 0;
  std::vector<EmbeddingStep> trace;
};

class EmbeddingError : public std::runtime_error {
 public:
  EmbeddingError(const std::string& what, std::vector<EmbeddingStep> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<EmbeddingStep>& trace() const { return trace_; }

 private:
  std::vector<EmbeddingStep> trace_;
};

/// [0,1] intersected with every A - delta*alpha_m.
inline IntervalSet embedding_region(const IntervalSet& A, const std::vector<Rational>& alpha, const Rational& delta) {
  IntervalSet s(Interval::closed(0, 1));
  for (const auto& a : alpha) {
    s = intersect(s, translate(A, -delta * a));
    if (s.empty()) break;
  }
  return s;
}

/// Tries delta = delta0 * 2^-i for i = 1..i_max (skipping delta >= 1) and
/// returns the first with a region of positive measure, t the midpoint of its
/// largest (leftmost on ties) component. Every t + delta*alpha_m is checked
/// for membership in the avoider before returning.
inline EmbeddingCertificate find_embedding(const AvoiderConstruction& a, const std::vector<Rational>& alpha,
                                           const ThresholdSequence& t, int i_max = 40) {
  const Rational delta0 = delta0_of(alpha, t).value_or(Rational(1));
  std::vector<EmbeddingStep> trace;
  for (int i = 1; i <= i_max; ++i) {
    const Rational delta = delta0 / pow(Rational(2), static_cast<unsigned long>(i));
    if (delta >= 1) continue;
    const IntervalSet S = embedding_region(a.avoider, alpha, delta);
    const Rational meas = measure(S);
    trace.push_back({delta, meas});
    if (meas.sign() <= 0) continue;
    const Interval* best = &S[0];
    for (const auto& p : S)
      if (p.length() > best->length()) best = &p;
    EmbeddingCertificate c;
    c.delta = delta;
    c.t = best->midpoint();
    c.residual_measure = meas;
    c.ladder_index = i;
    for (const auto& al : alpha) {
      const Rational x = c.t + delta * al;
      if (!a.avoider.contains(x))
        throw std::logic_error("embedding point " + x.str() + " outside the avoider");
      ++c.checked_points;
    }
    c.trace = std::move(trace);
    return c;
  }
  throw EmbeddingError("no delta on the ladder up to i=" + std::to_string(i_max) + " gives a region of positive measure",
                       std::move(trace));
}

struct Squeeze {
  Rational measure;
  Rational lower;
  Rational upper;
  bool ok() const { return lower <= measure && measure <= upper; }
};

/// lambda <= |union of J - delta*alpha_m| <= lambda + delta (max alpha - min alpha).
inline Squeeze squeeze_check(const Interval& J, const std::vector<Rational>& alpha, const Rational& delta) {
  if (alpha.empty()) throw std::invalid_argument("empty alpha");
  std::vector<Interval> parts;
  for (const auto& a : alpha) parts.push_back(translate(J, -delta * a));
  const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
  return {measure(normalize(std::move(parts))), J.length(), J.length() + delta * (*hi - *lo)};
}

}  // namespace affcopy
