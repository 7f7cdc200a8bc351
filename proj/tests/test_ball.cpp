#include <doctest.h>

#include <random>

#include "rieszprod/ball.hpp"
#include "rieszprod/errors.hpp"

using namespace rieszprod;

namespace {

Rational random_rational(std::mt19937_64& rng, long long num_range,
                         long long den_range) {
  long long num = static_cast<long long>(rng() % (2 * num_range)) - num_range;
  long long den = 1 + static_cast<long long>(rng() % den_range);
  return Rational(num, den);
}

// Refinement regression: an enclosure computed at working precision must
// contain the midpoint of the same computation at doubled precision.
void check_refinement(const RealBall& coarse, const RealBall& fine) {
  CHECK(coarse.lower() <= fine.mid());
  CHECK(fine.mid() <= coarse.upper());
  CHECK(coarse.overlaps(fine));
}

}  // namespace

TEST_CASE("dyadic basics") {
  Dyadic d(BigInt(27), -5);
  CHECK(d.to_hex() == "0x1bp-5");
  CHECK(Dyadic::parse_hex("0x1bp-5") == d);
  CHECK(Dyadic::parse_hex("-0x1p0") == Dyadic(BigInt(-1), 0));
  CHECK((d + (-d)).is_zero());
  CHECK((d * d).to_rational() == Rational(729, 1024));
  Dyadic err;
  Dyadic r = d.round_to(3, Round::Nearest, &err);
  CHECK((r.to_rational() - d.to_rational()).abs() <= err.to_rational());
  CHECK(Dyadic(BigInt(1), -2).to_decimal(3) == "2.50e-1");
  CHECK(Dyadic(BigInt(-3), 4).to_decimal(2) == "-4.8e+1");
  CHECK(Dyadic().to_decimal(5) == "0");
}

TEST_CASE("directed rational conversion") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    Rational x = random_rational(rng, 10000, 9999);
    Dyadic err;
    Dyadic lo = Dyadic::from_rational(x, 64, Round::Floor, &err);
    CHECK(lo.compare(x) <= 0);
    CHECK((x - lo.to_rational()) <= err.to_rational());
    Dyadic hi = Dyadic::from_rational(x, 64, Round::Ceil, &err);
    CHECK(hi.compare(x) >= 0);
    Dyadic near = Dyadic::from_rational(x, 64, Round::Nearest, &err);
    CHECK((near.to_rational() - x).abs() <= err.to_rational());
  }
}

TEST_CASE("ball arithmetic encloses rational arithmetic") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    Rational x = random_rational(rng, 1000, 997);
    Rational y = random_rational(rng, 1000, 991);
    RealBall bx = RealBall::from_rational(x, 96);
    RealBall by = RealBall::from_rational(y, 96);
    CHECK((bx + by).contains(x + y));
    CHECK((bx - by).contains(x - y));
    CHECK((bx * by).contains(x * y));
    if (!y.is_zero() && !by.contains_zero()) {
      CHECK((bx / by).contains(x / y));
    }
    CHECK(bx.abs().contains(x.abs()));
    CHECK(bx.mul_rational(y).contains(x * y));
  }
}

TEST_CASE("division by a zero-straddling ball is rejected") {
  RealBall wide = RealBall::from_midrad(Dyadic(), Dyadic(BigInt(1), 0), 64);
  RealBall one = RealBall::exact_int(BigInt(1), 64);
  CHECK_THROWS_AS(one / wide, PrecisionError);
  CHECK_THROWS_AS(one / RealBall::exact(Dyadic(), 64), ArithmeticError);
}

TEST_CASE("pi enclosure") {
  RealBall pi = pi_ball(160);
  // pi is bracketed by d/10^57 and (d+1)/10^57 with these reference digits.
  BigInt d = BigInt::from_decimal(
      "3141592653589793238462643383279502884197169399375105820974");
  Rational lo(d, BigInt(10).pow(57));
  Rational hi(d + BigInt(1), BigInt(10).pow(57));
  CHECK(pi.upper().compare(lo) >= 0);
  CHECK(pi.lower().compare(hi) <= 0);
  // The 160-bit ball is far tighter than the reference bracket.
  CHECK(pi.rad().compare(Rational(BigInt(1), BigInt(2).pow(140))) <= 0);
  // Refinement containment.
  check_refinement(pi_ball(64), pi_ball(128));
  check_refinement(pi_ball(128), pi_ball(256));
}

TEST_CASE("sin and cos at exact rational multiples of pi") {
  CHECK(sinpi(Rational(0)).is_exact());
  CHECK(sinpi(Rational(1, 2)).mid() == Dyadic(BigInt(1), 0));
  CHECK(sinpi(Rational(1, 6)).mid() == Dyadic(BigInt(1), -1));
  CHECK(cospi(Rational(1, 3)).mid() == Dyadic(BigInt(1), -1));
  CHECK(cospi(Rational(1)).mid() == Dyadic(BigInt(-1), 0));
  CHECK(cospi(Rational(1, 2)).is_exact());
  CHECK(cospi(Rational(1, 2)).mid().is_zero());
  // sin(pi/4)^2 = 1/2, sin(pi/3)^2 = 3/4.
  RealBall s4 = sinpi(Rational(1, 4), 128);
  CHECK((s4 * s4).contains(Rational(1, 2)));
  RealBall s3 = sinpi(Rational(1, 3), 128);
  CHECK((s3 * s3).contains(Rational(3, 4)));
}

TEST_CASE("pythagorean identity as a property") {
  std::mt19937_64 rng(23);
  TrigCache cache(128);
  for (int i = 0; i < 120; ++i) {
    Rational x = random_rational(rng, 5000, 4999);
    RealBall s = sinpi(x, 128, &cache);
    RealBall c = cospi(x, 128, &cache);
    CHECK((s * s + c * c).contains(Rational(1)));
    // Odd/even symmetry.
    CHECK(sinpi(-x, 128, &cache).overlaps(-s));
    CHECK(cospi(-x, 128, &cache).overlaps(c));
    // Periodicity.
    CHECK(sinpi(x + Rational(2), 128, &cache).overlaps(s));
  }
}

TEST_CASE("trig refinement containment") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 60; ++i) {
    Rational x = random_rational(rng, 700, 691);
    check_refinement(sinpi(x, 64), sinpi(x, 128));
    check_refinement(cospi(x, 96), cospi(x, 192));
  }
}

TEST_CASE("sqrt") {
  RealBall three = RealBall::exact_int(BigInt(3), 128);
  RealBall root = sqrt_ball(three);
  CHECK((root * root).contains(Rational(3)));
  check_refinement(sqrt_ball(RealBall::exact_int(BigInt(3), 64)),
                   sqrt_ball(RealBall::exact_int(BigInt(3), 192)));
  // Interval touching zero still encloses.
  RealBall touchy = RealBall::from_midrad(Dyadic(BigInt(1), -10),
                                          Dyadic(BigInt(1), -9), 64);
  RealBall r = sqrt_ball(touchy);
  CHECK(r.lower().signum() <= 0);
  CHECK(r.upper().signum() > 0);
  CHECK_THROWS_AS(sqrt_ball(RealBall::exact_int(BigInt(-1), 64)),
                  ArithmeticError);
}

TEST_CASE("min and max enclosures") {
  RealBall a = RealBall::from_rational(Rational(1, 3), 64);
  RealBall b = RealBall::from_rational(Rational(1, 2), 64);
  CHECK(RealBall::enclose_min(a, b).contains(Rational(1, 3)));
  CHECK(RealBall::enclose_max(a, b).contains(Rational(1, 2)));
}

TEST_CASE("serialization of balls is bit-exact") {
  RealBall x = sinpi(Rational(1, 7), 128);
  Dyadic mid = Dyadic::parse_hex(x.mid().to_hex());
  Dyadic rad = Dyadic::parse_hex(x.rad().to_hex());
  CHECK(mid == x.mid());
  CHECK(rad == x.rad());
}
