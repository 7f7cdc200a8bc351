#include "rieszprod/rational.hpp"

#include <utility>

#include "rieszprod/errors.hpp"

namespace rieszprod {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

void Rational::normalize() {
  if (den_.is_zero()) throw ArithmeticError("rational with zero denominator");
  if (den_.is_negative()) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_.abs(), den_);
  if (g != BigInt(1)) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_coprime(BigInt num, BigInt den) {
  Rational out;
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  return out;
}

Rational Rational::parse(std::string_view text) {
  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(BigInt::from_decimal(text));
  }
  BigInt num = BigInt::from_decimal(text.substr(0, slash));
  BigInt den = BigInt::from_decimal(text.substr(slash + 1));
  return Rational(std::move(num), std::move(den));
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_decimal();
  return num_.to_decimal() + "/" + den_.to_decimal();
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

Rational Rational::abs() const {
  Rational out = *this;
  out.num_ = out.num_.abs();
  return out;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw ArithmeticError("reciprocal of zero");
  return Rational(den_, num_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw ArithmeticError("rational division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

Rational Rational::pow(std::uint64_t e) const {
  return Rational(num_.pow(e), den_.pow(e));
}

int Rational::compare(const Rational& rhs) const {
  return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

BigInt Rational::floor() const {
  BigInt q, r;
  BigInt::floor_divmod(num_, den_, q, r);
  return q;
}

BigInt Rational::ceil() const {
  BigInt q, r;
  BigInt::floor_divmod(num_, den_, q, r);
  if (!r.is_zero()) q += BigInt(1);
  return q;
}

BigInt Rational::trunc() const { return num_ / den_; }

BigInt nearest_int(const Rational& x) {
  BigInt q, r;
  BigInt::floor_divmod(x.num(), x.den(), q, r);
  // r/den in [0,1): round up iff strictly above 1/2 (ties go to the
  // smaller integer, which is the floor).
  BigInt twice = r + r;
  if (twice > x.den()) q += BigInt(1);
  return q;
}

Rational signed_frac(const Rational& x) {
  return x - Rational(nearest_int(x));
}

Rational frac_dist(const Rational& x) { return signed_frac(x).abs(); }

}  // namespace rieszprod
