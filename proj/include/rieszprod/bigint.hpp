#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rieszprod {

// Arbitrary-precision signed integer. Sign-magnitude with 32-bit limbs,
// little-endian. Zero is the empty limb vector with sign 0.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long value);
  BigInt(unsigned long long value);
  BigInt(int value) : BigInt(static_cast<long long>(value)) {}
  BigInt(long value) : BigInt(static_cast<long long>(value)) {}
  BigInt(unsigned value) : BigInt(static_cast<unsigned long long>(value)) {}
  BigInt(unsigned long value)
      : BigInt(static_cast<unsigned long long>(value)) {}

  static BigInt from_decimal(std::string_view text);
  // Accepts an optional sign followed by "0x..." hex digits.
  static BigInt from_hex(std::string_view text);

  std::string to_decimal() const;
  std::string to_hex() const;

  int signum() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool is_odd() const { return sign_ != 0 && (limbs_[0] & 1u); }
  bool is_negative() const { return sign_ < 0; }

  BigInt abs() const;
  BigInt operator-() const;

  // Number of bits in the magnitude; 0 for zero.
  std::size_t bit_length() const;
  bool bit(std::size_t i) const;
  // Number of trailing zero bits; 0 for zero.
  std::size_t trailing_zeros() const;

  bool fits_int64() const;
  std::int64_t to_int64() const;  // throws if out of range

  BigInt& operator+=(const BigInt& rhs);
  BigInt& operator-=(const BigInt& rhs);
  BigInt& operator*=(const BigInt& rhs);
  BigInt& operator/=(const BigInt& rhs);
  BigInt& operator%=(const BigInt& rhs);
  BigInt& operator<<=(std::size_t bits);
  BigInt& operator>>=(std::size_t bits);

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
  friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }
  friend BigInt operator<<(BigInt a, std::size_t s) { return a <<= s; }
  friend BigInt operator>>(BigInt a, std::size_t s) { return a >>= s; }

  // Truncated division: q rounds toward zero, r has the sign of a, |r| < |b|.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  // Floor division: q = ⌊a/b⌋, r = a - q*b has the sign of b.
  static void floor_divmod(const BigInt& a, const BigInt& b, BigInt& q,
                           BigInt& r);
  // Nonnegative remainder a mod |b|.
  static BigInt mod_euclid(const BigInt& a, const BigInt& b);

  static BigInt gcd(BigInt a, BigInt b);
  BigInt pow(std::uint64_t e) const;

  // ⌊√n⌋ for n ≥ 0.
  static BigInt isqrt(const BigInt& n);
  // Integer cube roots of n ≥ 0.
  static BigInt icbrt_floor(const BigInt& n);
  static BigInt icbrt_ceil(const BigInt& n);

  int compare(const BigInt& rhs) const;
  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) {
    return a.compare(b) != 0;
  }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    return a.compare(b) < 0;
  }
  friend bool operator<=(const BigInt& a, const BigInt& b) {
    return a.compare(b) <= 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) {
    return a.compare(b) > 0;
  }
  friend bool operator>=(const BigInt& a, const BigInt& b) {
    return a.compare(b) >= 0;
  }

 private:
  int sign_ = 0;
  std::vector<std::uint32_t> limbs_;

  void trim();
  static int compare_magnitude(const std::vector<std::uint32_t>& a,
                               const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_magnitude(
      const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_magnitude(
      const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_magnitude(
      const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static void divmod_magnitude(const std::vector<std::uint32_t>& a,
                               const std::vector<std::uint32_t>& b,
                               std::vector<std::uint32_t>& q,
                               std::vector<std::uint32_t>& r);
};

}  // namespace rieszprod
