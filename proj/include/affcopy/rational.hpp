#pragma once

// Exact signed rational scalar. Every endpoint, length and sequence value in
// the library is one of these; there is no floating-point path.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace affcopy {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() : q_(0) {}
  Rational(std::int64_t v) : q_(to_mpz(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}                    // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : q_(v) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(std::int64_t num, std::int64_t den) : Rational(to_mpz(num), to_mpz(den)) {}

  /// Parses "p", "p/q" or "-p/q" (whitespace not allowed).
  static Rational parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view s, bool allow_sign) {
      if (s.empty()) throw bad();
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) throw bad();
      for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw bad();
      std::string digits(s[0] == '+' ? s.substr(1) : s);
      return BigInt(digits, 10);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw bad();
    return Rational(num, den);
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  BigInt floor() const {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  BigInt ceil() const {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  /// "p/q", with "/q" omitted when q = 1.
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static BigInt to_mpz(std::int64_t v) {
    static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 platform expected");
    return BigInt(static_cast<long>(v));
  }

  mpq_class q_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// x^e for a non-negative integer exponent.
inline Rational pow(const Rational& x, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), x.raw().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.raw().get_den_mpz_t(), e);
  return Rational(num, den);
}

inline Rational reciprocal(const BigInt& n) { return Rational(BigInt(1), n); }
inline Rational reciprocal(std::int64_t n) { return Rational(1, n); }

inline std::int64_t to_int64(const BigInt& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t())) throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
  return mpz_get_si(v.get_mpz_t());
}

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace affcopy

template <>
struct std::hash<affcopy::Rational> {
  std::size_t operator()(const affcopy::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
