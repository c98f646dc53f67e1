#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace seqprice {

/// Exact arbitrary-precision rational, always held in canonical form
/// (positive denominator, numerator and denominator coprime).
///
/// Every value, price, weight and tolerance in the library is a Rational.
/// The strict inequalities that drive tie-breaking are only meaningful
/// under exact arithmetic, so there is deliberately no conversion *from*
/// floating point.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p" or "p/q" (optional leading '-'). Rejects decimals,
  /// exponents, whitespace and a zero denominator by throwing InputError.
  static Rational parse(std::string_view text);

  /// "p" when the denominator is 1, otherwise "p/q".
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

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

  /// Integer power with non-negative exponent.
  Rational pow(unsigned exponent) const;

  std::size_t hash() const;
  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace seqprice

template <>
struct std::hash<seqprice::Rational> {
  std::size_t operator()(const seqprice::Rational& r) const noexcept { return r.hash(); }
};
