#pragma once

// Mixed-radix digits with radices M_1, M_2, ... (even, non-decreasing,
// M_1 >= 4), the sets F_n of numbers whose n-th digit is 0 or M_n/2, the
// nested-interval point of the intersection of F_u + alpha_{j_u}, and the
// cover bound for the dimension function h(x) = -1/ln x.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affcopy/interval.hpp"

namespace affcopy {

/// Certified rational bounds lo < e^x < hi for a non-negative integer x, from
/// S_K = sum_{i<=K} 1/i! < e < S_K + 1/(K! K).
struct ExpBounds {
  Rational lo;
  Rational hi;
};

inline ExpBounds exp_bounds(unsigned long x, unsigned long terms) {
  if (terms < 1) throw std::invalid_argument("need at least one series term");
  BigInt fact = 1;
  Rational s = 1;
  for (unsigned long i = 1; i <= terms; ++i) {
    fact *= i;
    s += Rational(BigInt(1), fact);
  }
  const Rational e_hi = s + Rational(BigInt(1), fact * terms);
  return {pow(s, x), pow(e_hi, x)};
}

enum class HStatus { verified, fails, infeasible };

inline const char* to_string(HStatus s) {
  switch (s) {
    case HStatus::verified: return "verified";
    case HStatus::fails: return "fails";
    case HStatus::infeasible: return "infeasible";
  }
  return "?";
}

/// Decides P >= e^x by refining series bounds; infeasible when x exceeds the
/// budget or the bounds never separate.
inline HStatus compare_with_exp(const BigInt& P, const BigInt& x, const BigInt& budget) {
  if (x > budget) return HStatus::infeasible;
  const unsigned long xe = x.get_ui();
  const Rational p(P);
  for (unsigned long terms = 8; terms <= 512; terms *= 2) {
    const ExpBounds b = exp_bounds(xe, terms);
    if (p >= b.hi) return HStatus::verified;
    if (p <= b.lo) return HStatus::fails;
  }
  return HStatus::infeasible;
}

class MixedRadixSystem {
 public:
  explicit MixedRadixSystem(std::vector<BigInt> radices, const BigInt& budget = 4096) : radices_(std::move(radices)) {
    if (radices_.empty()) throw std::invalid_argument("empty radix schedule");
    if (radices_[0] < 4) throw std::invalid_argument("M_1 must be at least 4");
    products_.push_back(1);
    for (std::size_t i = 0; i < radices_.size(); ++i) {
      if (radices_[i] % 2 != 0) throw std::invalid_argument("radix M_" + std::to_string(i + 1) + " is odd");
      if (i > 0 && radices_[i] < radices_[i - 1])
        throw std::invalid_argument("radices decrease at M_" + std::to_string(i + 1));
      products_.push_back(products_.back() * radices_[i]);
    }
    for (int n = 1; n <= depth(); ++n) h_.push_back(compare_with_exp(P(n), P(n - 1), budget));
  }

  int depth() const { return static_cast<int>(radices_.size()); }
  const BigInt& M(int n) const { return radices_.at(static_cast<std::size_t>(n - 1)); }
  /// P_n = M_1 ... M_n, P_0 = 1.
  const BigInt& P(int n) const { return products_.at(static_cast<std::size_t>(n)); }
  const std::vector<BigInt>& radices() const { return radices_; }
  /// ln P_n >= P_{n-1}, i.e. h(1/P_n) <= 1/P_{n-1}.
  HStatus h_status(int n) const { return h_.at(static_cast<std::size_t>(n - 1)); }

 private:
  std::vector<BigInt> radices_;
  std::vector<BigInt> products_;
  std::vector<HStatus> h_;
};

inline HStatus check_h_condition(const MixedRadixSystem& sys, int n) {
  if (n < 1 || n > sys.depth()) throw std::out_of_range("level outside schedule");
  return sys.h_status(n);
}

/// M_1 = 4; M_n = max(M_{n-1}, least even integer >= hi(e^{P_{n-1}})/P_{n-1})
/// while P_{n-1} <= budget, otherwise M_n = 2 M_{n-1}.
inline MixedRadixSystem default_schedule(int depth, const BigInt& budget = 4096) {
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  std::vector<BigInt> radices{4};
  BigInt P = 4;
  for (int n = 2; n <= depth; ++n) {
    BigInt next;
    if (P <= budget) {
      // Enough terms that the upper bound is within a factor 1 + 2^-20 of e^P.
      unsigned long terms = 8;
      BigInt fact = 40320;
      while (fact * terms < P * (BigInt(1) << 20)) {
        ++terms;
        fact *= terms;
      }
      const Rational hi = exp_bounds(P.get_ui(), terms).hi;
      next = (hi / Rational(P)).ceil();
      if (next % 2 != 0) next += 1;
      if (next < radices.back()) next = radices.back();
    } else {
      next = 2 * radices.back();
    }
    radices.push_back(next);
    P *= next;
  }
  return MixedRadixSystem(std::move(radices), budget);
}

struct DigitVector {
  BigInt integer_part;
  std::vector<BigInt> digits;
  bool exact = false;  // remainder vanished within the computed digits
  std::optional<std::vector<BigInt>> alternative;  // the other expansion of a terminating value

  Rational value(const MixedRadixSystem& sys, const std::vector<BigInt>& ds) const {
    Rational v(integer_part);
    for (std::size_t i = 0; i < ds.size(); ++i) v += Rational(ds[i], sys.P(static_cast<int>(i + 1)));
    return v;
  }
};

inline DigitVector digits_of(const Rational& x, const MixedRadixSystem& sys, int depth) {
  if (depth < 0 || depth > sys.depth()) throw std::out_of_range("digit depth outside schedule");
  DigitVector d;
  d.integer_part = x.floor();
  Rational r = x - Rational(d.integer_part);
  int terminated_at = r.is_zero() ? 0 : -1;
  for (int n = 1; n <= depth; ++n) {
    r *= Rational(sys.M(n));
    const BigInt digit = r.floor();
    r -= Rational(digit);
    d.digits.push_back(digit);
    if (terminated_at < 0 && r.is_zero()) terminated_at = n;
  }
  d.exact = terminated_at >= 0;
  if (terminated_at > 0) {
    std::vector<BigInt> alt(d.digits.begin(), d.digits.begin() + terminated_at);
    alt.back() -= 1;
    for (int n = terminated_at + 1; n <= depth; ++n) alt.push_back(sys.M(n) - 1);
    d.alternative = std::move(alt);
  }
  return d;
}

/// Whether the n-th digit of x is 0 or M_n/2 in either expansion of x.
inline bool f_membership(const Rational& x, int n, const MixedRadixSystem& sys) {
  if (n < 1 || n > sys.depth()) throw std::out_of_range("level outside schedule");
  // Position of x inside its block of length 1/P_{n-1}, measured in units of 1/P_n.
  const Rational scaled = x * Rational(sys.P(n - 1));
  const Rational z = (scaled - Rational(scaled.floor())) * Rational(sys.M(n));
  const BigInt half = sys.M(n) / 2;
  auto good = [&](const BigInt& digit) { return digit == 0 || digit == half; };
  const BigInt greedy = z.floor();
  if (good(greedy)) return true;
  return z.is_integer() && good(greedy - 1);
}

/// j_u = v_2(u) + 1.
inline int branch_index(std::int64_t u) {
  if (u < 1) throw std::invalid_argument("branch index needs u >= 1");
  int v = 1;
  while (u % 2 == 0) {
    u /= 2;
    ++v;
  }
  return v;
}

struct ChainStep {
  int u = 0;
  int j = 0;
  Interval C;
  Rational alpha;
  Interval window;  // C + alpha
};

struct NestedChain {
  std::vector<ChainStep> steps;
  const Interval& result() const { return steps.back().window; }
};

/// C_1 = [0, 1/M_1]; for u >= 2, C_u is the leftmost interval of F_u with
/// C_u + alpha_{j_u} inside the previous window. alpha[j-1] is alpha_j.
inline NestedChain nested_intersect(const std::vector<Rational>& alpha, const MixedRadixSystem& sys, int U) {
  if (U < 1 || U > sys.depth()) throw std::out_of_range("U outside schedule");
  NestedChain chain;
  for (int u = 1; u <= U; ++u) {
    const int j = branch_index(u);
    if (static_cast<std::size_t>(j) > alpha.size())
      throw std::invalid_argument("alpha_" + std::to_string(j) + " needed at step " + std::to_string(u));
    const Rational& a = alpha[static_cast<std::size_t>(j - 1)];
    const Rational len(BigInt(1), sys.P(u));
    Rational start;
    if (u > 1) {
      // F_u intervals start on the grid (1/(2 P_{u-1})) Z.
      const Rational target = chain.steps.back().window.lo() - a;
      const BigInt grid = 2 * sys.P(u - 1);
      start = Rational((target * Rational(grid)).ceil(), grid);
    }
    Interval C = Interval::closed(start, start + len);
    Interval window = translate(C, a);
    if (u > 1 && !chain.steps.back().window.contains(window))
      throw std::logic_error("no admissible interval at step " + std::to_string(u));
    chain.steps.push_back({u, j, std::move(C), a, std::move(window)});
  }
  return chain;
}

/// Every x - alpha_{j_u} in F_u for u <= chain length.
inline bool chain_admits(const NestedChain& chain, const Rational& x, const MixedRadixSystem& sys) {
  for (const auto& s : chain.steps)
    if (!f_membership(x - s.alpha, s.u, sys)) return false;
  return true;
}

struct PremeasureBound {
  int level = 0;          // L = (2k-1) 2^{j-1}
  BigInt cover_count;     // P_L / prod_{l<=k} (M_{(2l-1)2^{j-1}} / 2)
  Rational length;        // 1/P_L
  Rational middle;        // cover_count / P_{L-1}
  Rational closed_form;   // 2 / prod_{l<k} (M_{(2l-1)2^{j-1}} / 2)
  Rational target;        // 1 / 2^{k-2}
  bool certified = false; // h condition verified at level L
  bool met() const { return middle == closed_form && middle <= target; }
};

inline PremeasureBound premeasure_bound(const MixedRadixSystem& sys, int j, int k) {
  if (j < 1 || k < 1) throw std::invalid_argument("j and k must be positive");
  const std::int64_t stride = std::int64_t{1} << (j - 1);
  const std::int64_t L = (2 * k - 1) * stride;
  if (L > sys.depth()) throw std::out_of_range("schedule too short: level " + std::to_string(L) + " needed");
  PremeasureBound b;
  b.level = static_cast<int>(L);
  BigInt halves = 1, halves_before_k = 1;
  for (int l = 1; l <= k; ++l) {
    const BigInt h = sys.M(static_cast<int>((2 * l - 1) * stride)) / 2;
    halves *= h;
    if (l < k) halves_before_k *= h;
  }
  b.cover_count = sys.P(b.level) / halves;
  b.length = Rational(BigInt(1), sys.P(b.level));
  b.middle = Rational(b.cover_count, sys.P(b.level - 1));
  b.closed_form = Rational(BigInt(2), halves_before_k);
  b.target = k >= 2 ? Rational(BigInt(1), BigInt(1) << static_cast<mp_bitcnt_t>(k - 2)) : Rational(2);
  b.certified = sys.h_status(b.level) == HStatus::verified;
  return b;
}

}  // namespace affcopy
