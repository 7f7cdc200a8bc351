#include "rieszprod/numeric.hpp"

#include <algorithm>

#include "rieszprod/errors.hpp"

namespace rieszprod {

RealBall frac_dist(const RealBall& x) {
  const Rational quarter(1, 4);
  const Rational half(1, 2);
  if (!x.rad().is_zero() && x.rad().compare(quarter) >= 0) {
    // Full interval [0, 1/2].
    return RealBall::from_midrad(Dyadic(BigInt(1), -2), Dyadic(BigInt(1), -2),
                                 x.prec());
  }
  // Shift by the integer nearest to the midpoint; the distance function is
  // unchanged and the remaining value u satisfies |u| <= 1/2 + rad.
  Rational mid = x.mid().to_rational();
  BigInt n = nearest_int(mid);
  RealBall u = x - RealBall::exact_int(n, x.prec());
  RealBall a = u.abs();
  // {x} = |u| when |u| <= 1/2, and 1 - |u| otherwise.
  if (a.upper().compare(half) <= 0) return a;
  if (a.lower().compare(half) >= 0) {
    return RealBall::from_rational(Rational(1), x.prec()) - a;
  }
  // Straddles 1/2: the value lies in [min(lo, 1-hi), 1/2].
  Rational lo = a.lower().to_rational();
  Rational hi = a.upper().to_rational();
  Rational low_end = std::min(lo, Rational(1) - hi);
  if (low_end < Rational(0)) low_end = Rational(0);
  Rational mid2 = (low_end + half) * Rational(1, 2);
  Rational rad2 = (half - low_end) * Rational(1, 2);
  Dyadic merr;
  Dyadic m = Dyadic::from_rational(mid2, x.prec(), Round::Nearest, &merr);
  Dyadic r = Dyadic::from_rational(rad2, 32, Round::Ceil) + merr;
  return RealBall::from_midrad(m, r, x.prec());
}

namespace {

Rational reduce_mod1(const Rational& x) { return x - Rational(x.floor()); }

}  // namespace

UnimodularPoint::UnimodularPoint(const Rational& theta)
    : angle_(reduce_mod1(theta)) {}

UnimodularPoint::UnimodularPoint(const RealBall& theta) : angle_(theta) {
  RealBall& ball = std::get<RealBall>(angle_);
  Rational mid = ball.mid().to_rational();
  BigInt shift = mid.floor();
  if (!shift.is_zero()) {
    ball = ball - RealBall::exact_int(shift, ball.prec());
  }
}

UnimodularPoint UnimodularPoint::power(const BigInt& n) const {
  if (is_rational()) {
    const Rational& theta = rational_angle();
    // n * a/q mod 1 = ((n mod q) * a mod q) / q.
    BigInt nm = BigInt::mod_euclid(n, theta.den());
    BigInt num = BigInt::mod_euclid(nm * theta.num(), theta.den());
    return UnimodularPoint(Rational(num, theta.den()));
  }
  const RealBall& theta = ball_angle();
  int need = static_cast<int>(n.bit_length()) + 64;
  int prec = std::max(theta.prec(), need);
  return UnimodularPoint(theta.round_to(prec).mul_bigint(n));
}

std::string UnimodularPoint::describe() const {
  if (is_rational()) return rational_angle().to_string();
  return ball_angle().to_string();
}

Rational frac_dist_of_multiple(const BigInt& n, const Rational& theta) {
  BigInt nm = BigInt::mod_euclid(n, theta.den());
  return frac_dist(Rational(nm * theta.num(), theta.den()));
}

Rational signed_frac_of_multiple(const BigInt& n, const Rational& theta) {
  BigInt nm = BigInt::mod_euclid(n, theta.den());
  return signed_frac(Rational(nm * theta.num(), theta.den()));
}

RealBall circle_dist(const BigInt& n, const UnimodularPoint& theta, int prec,
                     TrigCache* cache) {
  if (theta.is_rational()) {
    Rational d = frac_dist_of_multiple(n, theta.rational_angle());
    return sinpi(d, prec, cache).mul_pow2(1);
  }
  const RealBall& angle = theta.ball_angle();
  int need = static_cast<int>(n.bit_length()) + 64;
  int wp = std::max({prec, angle.prec(), need});
  RealBall scaled = angle.round_to(wp).mul_bigint(n);
  if (!scaled.rad().is_zero() &&
      scaled.rad().compare(Rational(1, 4)) >= 0) {
    throw PrecisionError(
        "circle_dist: angle ball too wide at n with " +
        std::to_string(n.bit_length()) + " bits; raise the precision");
  }
  RealBall d = frac_dist(scaled);
  RealBall s = sin_ball(pi_ball(wp) * d);
  return s.mul_pow2(1).round_to(std::max(prec, angle.prec()));
}

}  // namespace rieszprod
