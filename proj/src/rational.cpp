#include "seqprice/rational.hpp"

#include <ostream>
#include <regex>

#include "seqprice/errors.hpp"

namespace seqprice {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  static const std::regex pattern(R"((-?[0-9]+)(?:/([0-9]+))?)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw InputError("not an exact rational: '" + s + "'");
  mpz_class num(m[1].str(), 10);
  mpz_class den(1);
  if (m[2].matched) {
    den = mpz_class(m[2].str(), 10);
    if (den == 0) throw InputError("rational with zero denominator: '" + s + "'");
  }
  return Rational(mpq_class(num, den));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(unsigned exponent) const {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

std::size_t Rational::hash() const {
  const std::hash<std::string> h;
  return h(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace seqprice
