#pragma once

// 1-indexed exact sequences given by a generator and a horizon, plus the named
// presets accepted on the command line.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affcopy/rational.hpp"

namespace affcopy {

class Sequence {
 public:
  Sequence(std::string name, std::function<Rational(std::int64_t)> term, std::int64_t horizon, bool convex = false)
      : name_(std::move(name)), term_(std::move(term)), horizon_(horizon), convex_(convex) {
    if (horizon_ < 1) throw std::invalid_argument("sequence horizon must be positive");
  }

  static Sequence from_values(std::string name, std::vector<Rational> values) {
    if (values.empty()) throw std::invalid_argument("empty sequence");
    auto shared = std::make_shared<const std::vector<Rational>>(std::move(values));
    const auto n = static_cast<std::int64_t>(shared->size());
    return Sequence(std::move(name), [shared](std::int64_t m) { return (*shared)[static_cast<std::size_t>(m - 1)]; }, n);
  }

  const std::string& name() const { return name_; }
  std::int64_t horizon() const { return horizon_; }
  /// Declared (not checked) to be strictly decreasing with non-increasing gaps for all m.
  bool convex() const { return convex_; }

  Rational operator()(std::int64_t m) const {
    if (m < 1 || m > horizon_)
      throw std::out_of_range(name_ + ": index " + std::to_string(m) + " outside 1.." + std::to_string(horizon_));
    return term_(m);
  }
  Rational gap(std::int64_t m) const { return (*this)(m) - (*this)(m + 1); }

  std::vector<Rational> values(std::int64_t count) const {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t m = 1; m <= count; ++m) out.push_back((*this)(m));
    return out;
  }

  Sequence scaled(const Rational& c) const {
    auto t = term_;
    return Sequence(name_ + "*" + c.str(), [t, c](std::int64_t m) { return c * t(m); }, horizon_,
                    convex_ && c.sign() > 0);
  }

 private:
  std::string name_;
  std::function<Rational(std::int64_t)> term_;
  std::int64_t horizon_;
  bool convex_;
};

namespace presets {

inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() - 1;

/// 1/m.
inline Sequence harmonic(std::int64_t horizon = kUnbounded) {
  return Sequence("harmonic", [](std::int64_t m) { return reciprocal(m); }, horizon, true);
}

/// r^m for 0 < r < 1.
inline Sequence geometric(const Rational& r, std::int64_t horizon = kUnbounded) {
  if (r.sign() <= 0 || r >= 1) throw std::invalid_argument("geometric ratio must lie in (0,1), got " + r.str());
  return Sequence("geometric:" + r.str(), [r](std::int64_t m) { return pow(r, static_cast<unsigned long>(m)); },
                  horizon, true);
}

/// (m+1)^{-s} for a positive integer s.
inline Sequence polynomial(int s, std::int64_t horizon = kUnbounded) {
  if (s < 1) throw std::invalid_argument("polynomial exponent must be a positive integer");
  return Sequence("polynomial:" + std::to_string(s),
                  [s](std::int64_t m) { return Rational(1) / pow(Rational(m + 1), static_cast<unsigned long>(s)); },
                  horizon, true);
}

/// Bit length of m >= 1 (floor(log2 m) + 1), applied d times.
inline std::int64_t iterated_log2(std::int64_t m, int d) {
  for (int i = 0; i < d; ++i) {
    std::int64_t bits = 0;
    while (m > 0) {
      ++bits;
      m >>= 1;
    }
    m = bits;
  }
  return m;
}

/// 1/(1 + L_d(m)) + 1/(m+1), with L_d the d-fold integer log; decays like the
/// reciprocal of a d-fold iterated logarithm and is strictly decreasing.
inline Sequence iterlog(int d, std::int64_t horizon = kUnbounded) {
  if (d < 1) throw std::invalid_argument("iterated-log depth must be positive");
  return Sequence("iterlog:" + std::to_string(d),
                  [d](std::int64_t m) { return reciprocal(1 + iterated_log2(m, d)) + reciprocal(m + 1); }, horizon,
                  false);
}

}  // namespace presets

}  // namespace affcopy
