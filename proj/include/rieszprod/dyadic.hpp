#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rieszprod/bigint.hpp"
#include "rieszprod/rational.hpp"

namespace rieszprod {

enum class Round {
  Floor,    // toward -inf
  Ceil,     // toward +inf
  Nearest,  // ties to even
};

// Dyadic rational man * 2^exp. Normalized: man is odd, or man = 0 and
// exp = 0. Addition and multiplication are exact; precision control happens
// explicitly through round_to().
class Dyadic {
 public:
  Dyadic() : exp_(0) {}
  Dyadic(BigInt man, std::int64_t exp);
  explicit Dyadic(long long value) : Dyadic(BigInt(value), 0) {}
  explicit Dyadic(const BigInt& value) : Dyadic(value, 0) {}

  static Dyadic power_of_two(std::int64_t e) { return Dyadic(BigInt(1), e); }

  const BigInt& man() const { return man_; }
  std::int64_t exp() const { return exp_; }
  bool is_zero() const { return man_.is_zero(); }
  int signum() const { return man_.signum(); }
  std::size_t mant_bits() const { return man_.bit_length(); }

  Dyadic operator-() const;
  Dyadic abs() const;
  Dyadic mul_pow2(std::int64_t e) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& rhs) { return *this = *this + rhs; }
  Dyadic& operator-=(const Dyadic& rhs) { return *this = *this - rhs; }
  Dyadic& operator*=(const Dyadic& rhs) { return *this = *this * rhs; }

  int compare(const Dyadic& rhs) const;
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) {
    return a.compare(b) != 0;
  }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    return a.compare(b) < 0;
  }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) {
    return a.compare(b) <= 0;
  }
  friend bool operator>(const Dyadic& a, const Dyadic& b) {
    return a.compare(b) > 0;
  }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) {
    return a.compare(b) >= 0;
  }
  int compare(const Rational& rhs) const;

  Rational to_rational() const;

  // Rounds to at most `prec` mantissa bits. If `err` is non-null it receives
  // an upper bound on |result - *this| (zero when the rounding was exact).
  Dyadic round_to(std::int64_t prec, Round mode, Dyadic* err = nullptr) const;

  // For radius bookkeeping: a value >= |*this| with a short mantissa.
  Dyadic round_up_mag(std::int64_t bits) const;

  // Directed conversion from a rational; |x - result| < 2^(exp of ulp).
  static Dyadic from_rational(const Rational& x, std::int64_t prec, Round mode,
                              Dyadic* err = nullptr);

  // "0x<hex>p<exp>" with optional leading '-'; exact round trip.
  std::string to_hex() const;
  static Dyadic parse_hex(std::string_view text);

  // Deterministic scientific notation with `sig` significant digits.
  std::string to_decimal(std::size_t sig) const;

  // Lossy, clamped; only for ordering heuristics and human-facing sorting.
  double to_double_approx() const;

 private:
  BigInt man_;
  std::int64_t exp_;
  void normalize();
};

}  // namespace rieszprod
