#include "synergy/rational.hpp"

#include <ostream>
#include <utility>

#include "synergy/errors.hpp"

namespace synergy {

Rational::Rational(long value) : value_(value) {}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational::Rational(const BigInt& numerator, const BigInt& denominator)
    : value_(numerator, denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_text(text.substr(0, slash));
  const std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  BigInt num;
  BigInt den;
  // mpz_class::set_str accepts an optional leading '-' and rejects junk.
  if (num_text.empty() || den_text.empty() || num.set_str(num_text, 10) != 0 ||
      den.set_str(den_text, 10) != 0 || den_text.front() == '-' || den_text.front() == '+') {
    throw FormatError("not a rational number: '" + std::string(text) + "'");
  }
  if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

double Rational::to_double() const { return value_.get_d(); }

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace synergy
