#pragma once

#include <variant>

#include "rieszprod/ball.hpp"
#include "rieszprod/bigint.hpp"
#include "rieszprod/rational.hpp"

namespace rieszprod {

// Distance of a ball value to the nearest integer, as an enclosure inside
// [0, 1/2]. A ball too wide to resolve is reported as the full interval,
// never as a wrong value.
RealBall frac_dist(const RealBall& x);

// Point lambda = e^(2 i pi theta) on the unit circle, theta in [0, 1).
// The angle is either an exact rational or a rigorous ball.
class UnimodularPoint {
 public:
  explicit UnimodularPoint(const Rational& theta);
  explicit UnimodularPoint(const RealBall& theta);

  bool is_rational() const {
    return std::holds_alternative<Rational>(angle_);
  }
  const Rational& rational_angle() const {
    return std::get<Rational>(angle_);
  }
  const RealBall& ball_angle() const { return std::get<RealBall>(angle_); }

  // Angle of lambda^n, reduced to [0, 1) (exact for rational angles).
  UnimodularPoint power(const BigInt& n) const;

  std::string describe() const;

 private:
  std::variant<Rational, RealBall> angle_;
};

// |lambda^n - 1| = 2 sin(pi {n theta}) as an enclosure. For rational
// theta = a/q the reduction n mod q happens first, so the cost does not
// depend on the magnitude of n. For ball angles the working precision is
// raised to at least bit_length(n) + 64; if the scaled ball is still too
// wide to pin the fractional part, a PrecisionError is raised.
RealBall circle_dist(const BigInt& n, const UnimodularPoint& theta,
                     int prec = kDefaultPrecision, TrigCache* cache = nullptr);

// {n theta} for rational theta, exact.
Rational frac_dist_of_multiple(const BigInt& n, const Rational& theta);

// <n theta> (signed fractional part) for rational theta, exact.
Rational signed_frac_of_multiple(const BigInt& n, const Rational& theta);

}  // namespace rieszprod
