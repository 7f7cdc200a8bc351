#pragma once

#include <string>
#include <string_view>

#include "rieszprod/bigint.hpp"

namespace rieszprod {

// Exact rational number in canonical form: gcd(num, den) = 1, den > 0,
// zero represented as 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt numerator, BigInt denominator);
  Rational(long long numerator, long long denominator)
      : Rational(BigInt(numerator), BigInt(denominator)) {}
  explicit Rational(BigInt value) : num_(std::move(value)), den_(1) {}
  explicit Rational(long long value) : num_(value), den_(1) {}

  // Parses "a/b" or "a".
  static Rational parse(std::string_view text);
  std::string to_string() const;

  // Skips canonicalization. Precondition: gcd(num, den) = 1 and den > 0.
  static Rational from_coprime(BigInt num, BigInt den);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  int signum() const { return num_.signum(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }

  Rational operator-() const;
  Rational abs() const;
  Rational reciprocal() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  Rational pow(std::uint64_t e) const;

  int compare(const Rational& rhs) const;
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.compare(b) != 0;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.compare(b) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.compare(b) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.compare(b) > 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.compare(b) >= 0;
  }

  BigInt floor() const;
  BigInt ceil() const;
  // Integer part [x]: truncation toward zero.
  BigInt trunc() const;

 private:
  BigInt num_;
  BigInt den_;
  void normalize();
};

// Distance from x to the nearest integer, in [0, 1/2].
Rational frac_dist(const Rational& x);
// Integer closest to x; on a tie the smaller of the two.
BigInt nearest_int(const Rational& x);
// x - ⌊x⌉, in [-1/2, 1/2).
Rational signed_frac(const Rational& x);

}  // namespace rieszprod
