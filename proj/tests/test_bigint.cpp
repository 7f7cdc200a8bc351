#include <doctest.h>

#include <random>

#include "rieszprod/bigint.hpp"
#include "rieszprod/errors.hpp"

using rieszprod::ArithmeticError;
using rieszprod::BigInt;

namespace {

BigInt random_bigint(std::mt19937_64& rng, int max_limbs) {
  int limbs = 1 + static_cast<int>(rng() % max_limbs);
  BigInt out;
  for (int i = 0; i < limbs; ++i) {
    out = (out << 32) + BigInt(static_cast<unsigned long long>(
              rng() & 0xffffffffull));
  }
  if (rng() & 1) out = -out;
  return out;
}

}  // namespace

TEST_CASE("decimal and hex round trips") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    BigInt a = random_bigint(rng, 8);
    CHECK(BigInt::from_decimal(a.to_decimal()) == a);
    CHECK(BigInt::from_hex(a.to_hex()) == a);
  }
  CHECK(BigInt(0).to_decimal() == "0");
  CHECK(BigInt::from_decimal("-0").is_zero());
  CHECK_THROWS_AS(BigInt::from_decimal("12x"), rieszprod::ParseError);
}

TEST_CASE("arithmetic agrees with int64 on small values") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20000; ++i) {
    long long x = static_cast<long long>(rng() % 2000000) - 1000000;
    long long y = static_cast<long long>(rng() % 2000000) - 1000000;
    CHECK(BigInt(x) + BigInt(y) == BigInt(x + y));
    CHECK(BigInt(x) - BigInt(y) == BigInt(x - y));
    CHECK(BigInt(x) * BigInt(y) == BigInt(x * y));
    if (y != 0) {
      CHECK(BigInt(x) / BigInt(y) == BigInt(x / y));
      CHECK(BigInt(x) % BigInt(y) == BigInt(x % y));
    }
  }
}

TEST_CASE("division identity on large operands") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    BigInt a = random_bigint(rng, 12);
    BigInt b = random_bigint(rng, 6);
    if (b.is_zero()) continue;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    if (!r.is_zero()) CHECK(r.signum() == a.signum());
    // Floor division: remainder sign follows the divisor.
    BigInt fq, fr;
    BigInt::floor_divmod(a, b, fq, fr);
    CHECK(fq * b + fr == a);
    if (!fr.is_zero()) CHECK(fr.signum() == b.signum());
    CHECK(BigInt::mod_euclid(a, b).signum() >= 0);
  }
}

TEST_CASE("division guards") {
  BigInt q, r;
  CHECK_THROWS_AS(BigInt::divmod(BigInt(5), BigInt(0), q, r),
                  ArithmeticError);
}

TEST_CASE("gcd, pow, shifts") {
  CHECK(BigInt::gcd(BigInt(462), BigInt(1071)) == BigInt(21));
  CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
  CHECK(BigInt::gcd(BigInt(-4), BigInt(6)) == BigInt(2));
  CHECK(BigInt(3).pow(20) == BigInt::from_decimal("3486784401"));
  CHECK(BigInt(2).pow(100).to_decimal() == "1267650600228229401496703205376");
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    BigInt a = random_bigint(rng, 6).abs();
    std::size_t s = rng() % 90;
    CHECK(((a << s) >> s) == a);
    CHECK((a << s) == a * BigInt(2).pow(s));
  }
}

TEST_CASE("integer roots") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 300; ++i) {
    BigInt a = random_bigint(rng, 5).abs();
    BigInt s = BigInt::isqrt(a);
    CHECK(s * s <= a);
    CHECK((s + BigInt(1)) * (s + BigInt(1)) > a);
    BigInt c = BigInt::icbrt_floor(a);
    CHECK(c * c * c <= a);
    CHECK((c + BigInt(1)).pow(3) > a);
    BigInt cc = BigInt::icbrt_ceil(a);
    CHECK(cc * cc * cc >= a);
    if (!cc.is_zero()) CHECK((cc - BigInt(1)).pow(3) < a);
  }
  CHECK(BigInt::isqrt(BigInt::from_decimal("99999999999999999999")) ==
        BigInt::from_decimal("9999999999"));
  CHECK_THROWS_AS(BigInt::isqrt(BigInt(-1)), ArithmeticError);
}

TEST_CASE("int64 bridge") {
  CHECK(BigInt(-1).fits_int64());
  CHECK(BigInt(-1).to_int64() == -1);
  BigInt big = BigInt(2).pow(63);
  CHECK(!big.fits_int64());
  CHECK((-big).fits_int64());
  CHECK((-big).to_int64() == std::numeric_limits<std::int64_t>::min());
  CHECK((big - BigInt(1)).to_int64() ==
        std::numeric_limits<std::int64_t>::max());
}
