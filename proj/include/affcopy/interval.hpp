#pragma once

// Bounded intervals with per-endpoint open/closed flags and canonical finite
// unions of them. All set operations are exact pointwise set semantics.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affcopy/rational.hpp"

namespace affcopy {

class Interval {
 public:
  Interval(Rational lo, Rational hi, bool lo_closed, bool hi_closed)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed) {
    if (!valid(lo_, hi_, lo_closed_, hi_closed_))
      throw std::invalid_argument("invalid interval " + describe(lo_, hi_, lo_closed_, hi_closed_));
  }

  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Interval closed_open(Rational a, Rational b) { return {std::move(a), std::move(b), true, false}; }
  static Interval open_closed(Rational a, Rational b) { return {std::move(a), std::move(b), false, true}; }
  static Interval point(const Rational& a) { return {a, a, true, true}; }

  /// Nonempty iff lo < hi, or lo = hi with both endpoints closed.
  static bool valid(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed) {
    return lo < hi || (lo == hi && lo_closed && hi_closed);
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }

  Rational length() const { return hi_ - lo_; }
  bool degenerate() const { return lo_ == hi_; }
  bool is_open() const { return !lo_closed_ && !hi_closed_; }
  bool is_closed() const { return lo_closed_ && hi_closed_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }

  bool contains(const Rational& x) const {
    const bool above = lo_closed_ ? lo_ <= x : lo_ < x;
    const bool below = hi_closed_ ? x <= hi_ : x < hi_;
    return above && below;
  }

  /// Subset test in pointwise semantics.
  bool contains(const Interval& o) const {
    const bool left_ok = lo_ < o.lo_ || (lo_ == o.lo_ && (lo_closed_ || !o.lo_closed_));
    const bool right_ok = o.hi_ < hi_ || (o.hi_ == hi_ && (hi_closed_ || !o.hi_closed_));
    return left_ok && right_ok;
  }

  /// "(a,b)", "[a,b]", "[a,b)" or "(a,b]".
  std::string str() const { return describe(lo_, hi_, lo_closed_, hi_closed_); }

  static Interval parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("malformed interval: '" + std::string(text) + "'"); };
    if (text.size() < 5) throw bad();
    const char open_c = text.front();
    const char close_c = text.back();
    if ((open_c != '(' && open_c != '[') || (close_c != ')' && close_c != ']')) throw bad();
    const auto body = text.substr(1, text.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) throw bad();
    return Interval(Rational::parse(body.substr(0, comma)), Rational::parse(body.substr(comma + 1)),
                    open_c == '[', close_c == ']');
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  static std::string describe(const Rational& lo, const Rational& hi, bool lc, bool hc) {
    return std::string(lc ? "[" : "(") + lo.str() + "," + hi.str() + (hc ? "]" : ")");
  }

  Rational lo_;
  Rational hi_;
  bool lo_closed_;
  bool hi_closed_;
};

namespace detail {

inline bool starts_before(const Interval& a, const Interval& b) {
  if (a.lo() != b.lo()) return a.lo() < b.lo();
  return a.lo_closed() && !b.lo_closed();
}

/// True when a (sorted no later than b) and b share a point or abut with one
/// closed endpoint at the contact, so their union is a single interval.
inline bool mergeable(const Interval& a, const Interval& b) {
  if (b.lo() < a.hi()) return true;
  if (b.lo() == a.hi()) return a.hi_closed() || b.lo_closed();
  return false;
}

inline Interval hull_pair(const Interval& a, const Interval& b) {
  // a starts no later than b.
  bool lc = a.lo_closed() || (a.lo() == b.lo() && b.lo_closed());
  Rational hi = a.hi();
  bool hc = a.hi_closed();
  if (a.hi() < b.hi()) {
    hi = b.hi();
    hc = b.hi_closed();
  } else if (a.hi() == b.hi()) {
    hc = a.hi_closed() || b.hi_closed();
  }
  return Interval(a.lo(), std::move(hi), lc, hc);
}

}  // namespace detail

class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts) : IntervalSet(normalize(std::vector<Interval>(parts))) {}
  IntervalSet(const Interval& one) : parts_{one} {}  // NOLINT(google-explicit-constructor)

  /// Canonical form of an arbitrary finite union.
  static IntervalSet normalize(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), detail::starts_before);
    IntervalSet out;
    out.parts_.reserve(parts.size());
    for (auto& p : parts) {
      if (!out.parts_.empty() && detail::mergeable(out.parts_.back(), p)) {
        out.parts_.back() = detail::hull_pair(out.parts_.back(), p);
      } else {
        out.parts_.push_back(std::move(p));
      }
    }
    return out;
  }

  /// Adopts parts that are already sorted, separated and in canonical form.
  static IntervalSet from_canonical(std::vector<Interval> parts) {
    for (std::size_t i = 1; i < parts.size(); ++i)
      if (!detail::starts_before(parts[i - 1], parts[i]) || detail::mergeable(parts[i - 1], parts[i]))
        throw std::invalid_argument("parts are not canonical at index " + std::to_string(i));
    IntervalSet out;
    out.parts_ = std::move(parts);
    return out;
  }

  std::span<const Interval> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  const Interval& operator[](std::size_t i) const { return parts_[i]; }
  auto begin() const { return parts_.begin(); }
  auto end() const { return parts_.end(); }

  bool contains(const Rational& x) const {
    // First part whose hi is >= x.
    auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                               [](const Interval& p, const Rational& v) { return p.hi() < v; });
    return it != parts_.end() && it->contains(x);
  }

  bool contains(const Interval& iv) const {
    auto it = std::lower_bound(parts_.begin(), parts_.end(), iv.lo(),
                               [](const Interval& p, const Rational& v) { return p.hi() < v; });
    // The canonical part containing iv.lo() (if any) must contain all of iv.
    for (; it != parts_.end() && it->lo() <= iv.lo(); ++it)
      if (it->contains(iv)) return true;
    return false;
  }

  bool contains(const IntervalSet& s) const {
    return std::all_of(s.begin(), s.end(), [&](const Interval& p) { return contains(p); });
  }

  /// Smallest closed interval containing every part. Requires a nonempty set.
  Interval closed_hull() const {
    if (parts_.empty()) throw std::logic_error("hull of empty set");
    return Interval::closed(parts_.front().lo(), parts_.back().hi());
  }

  std::vector<std::string> strs() const {
    std::vector<std::string> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back(p.str());
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

inline IntervalSet normalize(std::vector<Interval> parts) { return IntervalSet::normalize(std::move(parts)); }

inline IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return normalize(std::move(all));
}

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Rational lo = a.lo();
  bool lc = a.lo_closed();
  if (b.lo() > a.lo()) {
    lo = b.lo();
    lc = b.lo_closed();
  } else if (b.lo() == a.lo()) {
    lc = a.lo_closed() && b.lo_closed();
  }
  Rational hi = a.hi();
  bool hc = a.hi_closed();
  if (b.hi() < a.hi()) {
    hi = b.hi();
    hc = b.hi_closed();
  } else if (b.hi() == a.hi()) {
    hc = a.hi_closed() && b.hi_closed();
  }
  if (!Interval::valid(lo, hi, lc, hc)) return std::nullopt;
  return Interval(std::move(lo), std::move(hi), lc, hc);
}

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (auto piece = intersect(a[i], b[j])) out.push_back(std::move(*piece));
    // Advance whichever part ends first; on a tie the closed end outlasts the open one.
    const bool a_first = a[i].hi() < b[j].hi() ||
                         (a[i].hi() == b[j].hi() && (!a[i].hi_closed() || b[j].hi_closed()));
    if (a_first) ++i; else ++j;
  }
  // Pieces are disjoint and ordered but may abut, e.g. (0,1] and (1,2) from two parts of b.
  return normalize(std::move(out));
}

/// window \ a.
inline IntervalSet complement_within(const IntervalSet& a, const Interval& window) {
  const IntervalSet inside = intersect(a, IntervalSet(window));
  std::vector<Interval> out;
  Rational cur = window.lo();
  bool cur_closed = window.lo_closed();
  for (const auto& p : inside) {
    if (Interval::valid(cur, p.lo(), cur_closed, !p.lo_closed()))
      out.emplace_back(cur, p.lo(), cur_closed, !p.lo_closed());
    cur = p.hi();
    cur_closed = !p.hi_closed();
  }
  if (Interval::valid(cur, window.hi(), cur_closed, window.hi_closed()))
    out.emplace_back(cur, window.hi(), cur_closed, window.hi_closed());
  return IntervalSet::from_canonical(std::move(out));
}

/// a \ b.
inline IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty()) return a;
  const Interval hull = a.closed_hull();
  return intersect(a, complement_within(b, hull));
}

/// Image {scale * x + shift : x in s}.
inline IntervalSet affine(const IntervalSet& s, const Rational& scale, const Rational& shift) {
  if (scale.is_zero()) throw std::invalid_argument("affine map with zero scale");
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& p : s) {
    if (scale.sign() > 0)
      out.emplace_back(scale * p.lo() + shift, scale * p.hi() + shift, p.lo_closed(), p.hi_closed());
    else
      out.emplace_back(scale * p.hi() + shift, scale * p.lo() + shift, p.hi_closed(), p.lo_closed());
  }
  if (scale.sign() < 0) std::reverse(out.begin(), out.end());
  return IntervalSet::from_canonical(std::move(out));
}

inline IntervalSet translate(const IntervalSet& s, const Rational& shift) { return affine(s, Rational(1), shift); }

inline Interval translate(const Interval& iv, const Rational& shift) {
  return Interval(iv.lo() + shift, iv.hi() + shift, iv.lo_closed(), iv.hi_closed());
}

/// Lebesgue measure; endpoint flags are irrelevant.
inline Rational measure(const IntervalSet& s) {
  Rational total;
  for (const auto& p : s) total += p.length();
  return total;
}

/// Left r-neighbourhood {x - t : x in s, 0 <= t < r}. For a part with endpoints
/// a < b this is (a - r, b) with the right flag kept, which for the open parts
/// used throughout is exactly (a - r, b).
inline IntervalSet left_neighborhood(const IntervalSet& s, const Rational& r) {
  if (r.sign() <= 0) throw std::invalid_argument("left neighbourhood radius must be positive, got " + r.str());
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const auto& p : s) out.emplace_back(p.lo() - r, p.hi(), false, p.hi_closed());
  return normalize(std::move(out));
}

inline Interval left_neighborhood(const Interval& iv, const Rational& r) {
  if (r.sign() <= 0) throw std::invalid_argument("left neighbourhood radius must be positive, got " + r.str());
  return Interval(iv.lo() - r, iv.hi(), false, iv.hi_closed());
}

/// Replaces every part by [a, b). Parts must be nondegenerate with pairwise
/// disjoint closures; they are taken as given, so a list such as
/// (0,1/2), [1/2,1] is rejected even though its union is one interval.
inline IntervalSet star(std::span<const Interval> parts) {
  std::vector<Interval> sorted(parts.begin(), parts.end());
  std::sort(sorted.begin(), sorted.end(), detail::starts_before);
  std::vector<Interval> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].degenerate()) throw std::invalid_argument("star of degenerate part " + sorted[i].str());
    if (i > 0 && sorted[i - 1].hi() >= sorted[i].lo())
      throw std::invalid_argument("star requires disjoint closures; " + sorted[i - 1].str() + " touches " +
                                  sorted[i].str());
    out.push_back(Interval::closed_open(sorted[i].lo(), sorted[i].hi()));
  }
  return IntervalSet::from_canonical(std::move(out));
}

inline IntervalSet star(const IntervalSet& s) { return star(s.parts()); }

inline Interval star(const Interval& iv) {
  if (iv.degenerate()) throw std::invalid_argument("star of degenerate interval " + iv.str());
  return Interval::closed_open(iv.lo(), iv.hi());
}

}  // namespace affcopy
