#pragma once

#include <map>
#include <string>
#include <utility>

#include "rieszprod/dyadic.hpp"
#include "rieszprod/errors.hpp"
#include "rieszprod/rational.hpp"

namespace rieszprod {

inline constexpr int kDefaultPrecision = 128;

// Rigorous real scalar: the represented value lies in [mid - rad, mid + rad].
// Every operation returns an enclosure of the exact result; midpoints are
// rounded to `prec` bits and all rounding slack is absorbed into the radius.
class RealBall {
 public:
  RealBall() : prec_(kDefaultPrecision) {}

  static RealBall exact(Dyadic d, int prec = kDefaultPrecision);
  static RealBall exact_int(const BigInt& n, int prec = kDefaultPrecision);
  static RealBall from_rational(const Rational& x,
                                int prec = kDefaultPrecision);
  static RealBall from_midrad(Dyadic mid, Dyadic rad,
                              int prec = kDefaultPrecision);

  const Dyadic& mid() const { return mid_; }
  const Dyadic& rad() const { return rad_; }
  int prec() const { return prec_; }
  bool is_exact() const { return rad_.is_zero(); }

  Dyadic lower() const { return mid_ - rad_; }
  Dyadic upper() const { return mid_ + rad_; }

  bool contains(const Rational& x) const;
  bool contains(const Dyadic& x) const;
  bool contains_zero() const;

  RealBall operator-() const;
  RealBall abs() const;
  RealBall mul_pow2(std::int64_t e) const;

  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  // Throws PrecisionError if the divisor ball straddles zero.
  friend RealBall operator/(const RealBall& a, const RealBall& b);
  RealBall& operator+=(const RealBall& r) { return *this = *this + r; }
  RealBall& operator-=(const RealBall& r) { return *this = *this - r; }
  RealBall& operator*=(const RealBall& r) { return *this = *this * r; }
  RealBall& operator/=(const RealBall& r) { return *this = *this / r; }

  RealBall mul_bigint(const BigInt& n) const;
  RealBall div_bigint(const BigInt& n) const;
  RealBall mul_rational(const Rational& q) const;

  // Exact accumulation: no midpoint rounding, so the mantissa grows with
  // the number of addends. For hot summation loops; round_to() when done.
  RealBall& add_exact(const RealBall& other) {
    mid_ += other.mid_;
    rad_ += other.rad_;
    if (other.prec_ > prec_) prec_ = other.prec_;
    return *this;
  }

  // Certified order predicates: true only when provable from the bounds.
  bool definitely_ge(const RealBall& other) const {
    return lower() >= other.upper();
  }
  bool definitely_gt(const RealBall& other) const {
    return lower() > other.upper();
  }
  bool definitely_le(const RealBall& other) const {
    return upper() <= other.lower();
  }
  bool definitely_lt(const RealBall& other) const {
    return upper() < other.lower();
  }
  bool definitely_ge(const Rational& x) const {
    return lower().compare(x) >= 0;
  }
  bool definitely_le(const Rational& x) const {
    return upper().compare(x) <= 0;
  }
  bool overlaps(const RealBall& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
  }

  RealBall round_to(int prec) const;

  // Enclosure of min/max of the two represented values.
  static RealBall enclose_min(const RealBall& a, const RealBall& b);
  static RealBall enclose_max(const RealBall& a, const RealBall& b);

  std::string to_string(std::size_t sig = 20) const;

 private:
  Dyadic mid_;
  Dyadic rad_;
  int prec_ = kDefaultPrecision;

  RealBall finished(Dyadic mid, Dyadic rad, int prec) const;
};

// Enclosure of pi at the given precision (cached per precision).
RealBall pi_ball(int prec = kDefaultPrecision);

// sin/cos enclosures. The argument midpoint must satisfy |mid| <= 4; callers
// are expected to reduce first (sinpi/cospi below do).
RealBall sin_ball(const RealBall& x);
RealBall cos_ball(const RealBall& x);

// sqrt enclosure; the ball must not be certainly negative.
RealBall sqrt_ball(const RealBall& x);

// Memo for sin(pi x)/cos(pi x) at exact rational arguments. Keyed by the
// canonical argument reduced to [0, 1/2]; hits require cached precision >=
// requested precision. Not thread-safe: share one per computation thread.
class TrigCache {
 public:
  explicit TrigCache(int prec = kDefaultPrecision) : prec_(prec) {}
  int prec() const { return prec_; }

 private:
  friend RealBall sinpi(const Rational&, int, TrigCache*);
  friend RealBall cospi(const Rational&, int, TrigCache*);
  struct Key {
    bool cosine;
    BigInt num, den;
    bool operator<(const Key& other) const {
      if (cosine != other.cosine) return cosine < other.cosine;
      int c = num.compare(other.num);
      if (c != 0) return c < 0;
      return den.compare(other.den) < 0;
    }
  };
  int prec_;
  std::map<Key, RealBall> entries_;
};

// sin(pi x) and cos(pi x) for exact rational x, reduced exactly mod 2.
// Exact rational outputs (0, ±1, ±1/2) are returned with zero radius.
RealBall sinpi(const Rational& x, int prec = kDefaultPrecision,
               TrigCache* cache = nullptr);
RealBall cospi(const Rational& x, int prec = kDefaultPrecision,
               TrigCache* cache = nullptr);

}  // namespace rieszprod
