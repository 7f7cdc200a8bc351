#include "rieszprod/ball.hpp"

#include <algorithm>
#include <mutex>

namespace rieszprod {

namespace {

constexpr std::int64_t kRadBits = 32;

Dyadic rad_up(const Dyadic& d) { return d.abs().round_up_mag(kRadBits); }

// Floor of a dyadic as a BigInt.
BigInt dyadic_floor(const Dyadic& d) {
  if (d.exp() >= 0) return d.man() << static_cast<std::size_t>(d.exp());
  BigInt q, r;
  BigInt::floor_divmod(d.man(), BigInt(1) << static_cast<std::size_t>(-d.exp()),
                       q, r);
  return q;
}

// ---- fixed-point transcendental cores (values scaled by 2^W) ----

struct Fixed {
  BigInt value;  // signed, scaled by 2^W
  BigInt err;    // |value - true*2^W| <= err
};

// atan(1/x) for a small integer x >= 2, scaled by 2^W.
Fixed atan_inv_scaled(std::uint32_t x, std::int64_t W) {
  const BigInt x2(static_cast<long long>(x) * x);
  BigInt t = (BigInt(1) << static_cast<std::size_t>(W)) /
             BigInt(static_cast<long long>(x));
  BigInt sum = t;  // k = 0 term: S/x
  BigInt terms(1);
  bool negative = true;
  for (std::uint64_t k = 1;; ++k) {
    t /= x2;  // exact: floor(floor(S/x^(2k-1))/x^2) = floor(S/x^(2k+1))
    if (t.is_zero()) break;
    BigInt term = t / BigInt(static_cast<long long>(2 * k + 1));
    if (negative) {
      sum -= term;
    } else {
      sum += term;
    }
    negative = !negative;
    terms += BigInt(1);
  }
  // Each included term truncates by < 1; the omitted tail is < 2.
  return Fixed{sum, terms + BigInt(3)};
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239).
Fixed pi_scaled(std::int64_t W) {
  Fixed a = atan_inv_scaled(5, W);
  Fixed b = atan_inv_scaled(239, W);
  BigInt value = a.value * BigInt(16) - b.value * BigInt(4);
  BigInt err = a.err * BigInt(16) + b.err * BigInt(4);
  return Fixed{value, err};
}

// sin(X/2^W) * 2^W for |X/2^W| <= 4.5. Taylor with exact error recurrence.
Fixed sin_scaled(const BigInt& X, std::int64_t W) {
  const BigInt S = BigInt(1) << static_cast<std::size_t>(W);
  const BigInt S2 = S * S;
  const BigInt A = X.abs();
  const BigInt X2 = A * A;
  BigInt t = A;        // term magnitude, scaled
  BigInt e = BigInt(0);  // bound on |t - true term|, scaled
  BigInt sum = A;      // series for |x|; sign restored at the end
  BigInt err = BigInt(0);
  bool negative = true;
  for (std::uint64_t k = 1;; ++k) {
    BigInt D = S2 * BigInt(static_cast<long long>(2 * k) *
                           static_cast<long long>(2 * k + 1));
    e = (e * X2 + D - BigInt(1)) / D + BigInt(1);
    t = (t * X2) / D;
    if (t.is_zero() && X2 + X2 < D) {
      // True omitted terms are <= e and shrink by a factor < 1/2.
      err += e + e + BigInt(1);
      break;
    }
    if (negative) {
      sum -= t;
    } else {
      sum += t;
    }
    err += e;
    negative = !negative;
  }
  if (X.is_negative()) sum = -sum;
  return Fixed{sum, err};
}

// cos(X/2^W) * 2^W for |X/2^W| <= 4.5.
Fixed cos_scaled(const BigInt& X, std::int64_t W) {
  const BigInt S = BigInt(1) << static_cast<std::size_t>(W);
  const BigInt S2 = S * S;
  const BigInt X2 = X * X;
  BigInt t = S;
  BigInt e = BigInt(0);
  BigInt sum = S;
  BigInt err = BigInt(0);
  bool negative = true;
  for (std::uint64_t k = 0;; ++k) {
    BigInt D = S2 * BigInt(static_cast<long long>(2 * k + 1) *
                           static_cast<long long>(2 * k + 2));
    e = (e * X2 + D - BigInt(1)) / D + BigInt(1);
    t = (t * X2) / D;
    if (t.is_zero() && X2 + X2 < D) {
      err += e + e + BigInt(1);
      break;
    }
    if (negative) {
      sum -= t;
    } else {
      sum += t;
    }
    err += e;
    negative = !negative;
  }
  return Fixed{sum, err};
}

}  // namespace

RealBall RealBall::finished(Dyadic mid, Dyadic rad, int prec) const {
  Dyadic err;
  RealBall out;
  out.mid_ = mid.round_to(prec, Round::Nearest, &err);
  out.rad_ = rad_up(rad + err);
  out.prec_ = prec;
  return out;
}

RealBall RealBall::exact(Dyadic d, int prec) {
  RealBall out;
  out.mid_ = std::move(d);
  out.rad_ = Dyadic();
  out.prec_ = prec;
  return out;
}

RealBall RealBall::exact_int(const BigInt& n, int prec) {
  return exact(Dyadic(n), prec);
}

RealBall RealBall::from_rational(const Rational& x, int prec) {
  Dyadic err;
  Dyadic mid = Dyadic::from_rational(x, prec, Round::Nearest, &err);
  RealBall out;
  out.mid_ = std::move(mid);
  out.rad_ = rad_up(err);
  out.prec_ = prec;
  return out;
}

RealBall RealBall::from_midrad(Dyadic mid, Dyadic rad, int prec) {
  if (rad.signum() < 0) throw ArithmeticError("negative ball radius");
  RealBall out;
  return out.finished(std::move(mid), std::move(rad), prec);
}

bool RealBall::contains(const Rational& x) const {
  return lower().compare(x) <= 0 && upper().compare(x) >= 0;
}

bool RealBall::contains(const Dyadic& x) const {
  return lower() <= x && x <= upper();
}

bool RealBall::contains_zero() const {
  return lower().signum() <= 0 && upper().signum() >= 0;
}

RealBall RealBall::operator-() const {
  RealBall out = *this;
  out.mid_ = -out.mid_;
  return out;
}

RealBall RealBall::abs() const {
  // |.| is 1-Lipschitz, so the same radius around |mid| always encloses.
  RealBall out = *this;
  out.mid_ = out.mid_.abs();
  if (out.mid_ < out.rad_) {
    // Tighten: the value lies in [0, mid+rad].
    Dyadic hi = out.mid_ + out.rad_;
    out.mid_ = hi.mul_pow2(-1);
    out.rad_ = out.mid_;
  }
  return out;
}

RealBall RealBall::mul_pow2(std::int64_t e) const {
  RealBall out = *this;
  out.mid_ = out.mid_.mul_pow2(e);
  out.rad_ = out.rad_.mul_pow2(e);
  return out;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  int prec = std::max(a.prec_, b.prec_);
  return a.finished(a.mid_ + b.mid_, a.rad_ + b.rad_, prec);
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  int prec = std::max(a.prec_, b.prec_);
  return a.finished(a.mid_ - b.mid_, a.rad_ + b.rad_, prec);
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  int prec = std::max(a.prec_, b.prec_);
  Dyadic mid = a.mid_ * b.mid_;
  Dyadic rad = a.mid_.abs() * b.rad_ + b.mid_.abs() * a.rad_ + a.rad_ * b.rad_;
  return a.finished(std::move(mid), std::move(rad), prec);
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  int prec = std::max(a.prec_, b.prec_);
  Dyadic bm = b.mid_.abs();
  if (bm <= b.rad_) {
    if (b.mid_.is_zero() && b.rad_.is_zero())
      throw ArithmeticError("division by zero ball");
    throw PrecisionError("division by a ball containing zero");
  }
  Rational q = a.mid_.to_rational() / b.mid_.to_rational();
  Dyadic err;
  Dyadic mid = Dyadic::from_rational(q, prec, Round::Nearest, &err);
  // |a/b - am/bm| <= (ra|bm| + rb|am|) / (|bm| (|bm| - rb)).
  Rational num = (a.rad_ * bm + b.rad_ * a.mid_.abs()).to_rational();
  Rational den = (bm * (bm - b.rad_)).to_rational();
  Dyadic prop = Dyadic::from_rational(num / den, kRadBits, Round::Ceil);
  RealBall out;
  out.mid_ = std::move(mid);
  out.rad_ = rad_up(prop + err);
  out.prec_ = prec;
  return out;
}

RealBall RealBall::mul_bigint(const BigInt& n) const {
  return finished(mid_ * Dyadic(n), rad_ * Dyadic(n.abs()), prec_);
}

RealBall RealBall::div_bigint(const BigInt& n) const {
  return mul_rational(Rational(BigInt(1), n));
}

RealBall RealBall::mul_rational(const Rational& q) const {
  if (q.is_zero()) return exact(Dyadic(), prec_);
  Dyadic err;
  Dyadic mid =
      Dyadic::from_rational(mid_.to_rational() * q, prec_, Round::Nearest,
                            &err);
  Dyadic rad;
  if (!rad_.is_zero()) {
    rad = Dyadic::from_rational(rad_.to_rational() * q.abs(), kRadBits,
                                Round::Ceil);
  }
  RealBall out;
  out.mid_ = std::move(mid);
  out.rad_ = rad_up(rad + err);
  out.prec_ = prec_;
  return out;
}

RealBall RealBall::round_to(int prec) const {
  return finished(mid_, rad_, prec);
}

RealBall RealBall::enclose_min(const RealBall& a, const RealBall& b) {
  Dyadic lo = std::min(a.lower(), b.lower());
  Dyadic hi = std::min(a.upper(), b.upper());
  RealBall out;
  out.mid_ = (lo + hi).mul_pow2(-1);
  out.rad_ = rad_up((hi - lo).mul_pow2(-1));
  out.prec_ = std::max(a.prec_, b.prec_);
  return out;
}

RealBall RealBall::enclose_max(const RealBall& a, const RealBall& b) {
  return -enclose_min(-a, -b);
}

std::string RealBall::to_string(std::size_t sig) const {
  return mid_.to_decimal(sig) + " +/- " + rad_.to_decimal(4);
}

RealBall pi_ball(int prec) {
  static std::mutex mutex;
  static std::map<int, RealBall> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
  }
  std::int64_t W = prec + 32;
  Fixed p = pi_scaled(W);
  RealBall out = RealBall::from_midrad(Dyadic(p.value, -W),
                                       Dyadic(p.err + BigInt(1), -W), prec);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(prec, out);
  return out;
}

namespace {

RealBall trig_eval(const RealBall& x, bool cosine) {
  int prec = x.prec();
  // Outside the reduced range we cannot say more than [-1, 1].
  Dyadic limit(BigInt(9), -1);
  if (x.mid().abs() > limit) {
    return RealBall::from_midrad(Dyadic(), Dyadic(BigInt(1), 0), prec);
  }
  std::int64_t W = prec + 32;
  Dyadic scaled = x.mid().mul_pow2(W);
  BigInt X = dyadic_floor(scaled);
  Fixed f = cosine ? cos_scaled(X, W) : sin_scaled(X, W);
  // One ulp quantizing the midpoint (Lipschitz constant 1), plus the series
  // error, plus the incoming radius.
  Dyadic rad = Dyadic(f.err + BigInt(2), -W) + x.rad();
  return RealBall::from_midrad(Dyadic(f.value, -W), rad, prec);
}

}  // namespace

RealBall sin_ball(const RealBall& x) { return trig_eval(x, false); }
RealBall cos_ball(const RealBall& x) { return trig_eval(x, true); }

RealBall sqrt_ball(const RealBall& x) {
  int prec = x.prec();
  Dyadic lo = x.lower();
  Dyadic hi = x.upper();
  if (hi.signum() < 0) throw ArithmeticError("sqrt of a negative ball");
  std::int64_t W = prec + 32;
  auto sqrt_upper = [&](const Dyadic& d) {
    // Upper bound for sqrt(d), d >= 0.
    if (d.signum() <= 0) return Dyadic();
    std::int64_t j = d.exp() < 0 ? -d.exp() : 0;
    BigInt a = d.man();
    if (d.exp() > 0) a <<= static_cast<std::size_t>(d.exp());
    // sqrt(a / 2^j) = sqrt(a * 2^j) / 2^j.
    BigInt N = a << static_cast<std::size_t>(j + 2 * W);
    BigInt G = BigInt::isqrt(N) + BigInt(1);
    return Dyadic(G, -(j + W));
  };
  if (lo.signum() <= 0) {
    Dyadic s = sqrt_upper(hi);
    Dyadic mid = s.mul_pow2(-1);
    return RealBall::from_midrad(mid, mid, prec);
  }
  // Value of sqrt at the midpoint, off by at most 2^-W.
  std::int64_t j = x.mid().exp() < 0 ? -x.mid().exp() : 0;
  BigInt a = x.mid().man();
  if (x.mid().exp() > 0) a <<= static_cast<std::size_t>(x.mid().exp());
  BigInt G = BigInt::isqrt(a << static_cast<std::size_t>(j + 2 * W));
  Dyadic s(G, -(j + W));
  // |sqrt(v) - sqrt(m)| <= rad / (sqrt(m) + sqrt(lo)) <= rad / sqrt(lo).
  Dyadic slo_up = sqrt_upper(lo);
  // sqrt(lo) >= lo / sqrt_upper(lo).
  Rational slo_down = lo.to_rational() / slo_up.to_rational();
  Rational prop = x.rad().to_rational() / slo_down;
  Dyadic rad = Dyadic::from_rational(prop, kRadBits, Round::Ceil) +
               Dyadic(BigInt(2), -W);
  return RealBall::from_midrad(s, rad, prec);
}

namespace {

// Reduce x mod 2 into [0, 2). Works on the raw numerator: for x = a/b in
// lowest terms, (a mod 2b)/b is already in lowest terms.
Rational reduce_mod2(const Rational& x) {
  const BigInt& b = x.den();
  BigInt num = BigInt::mod_euclid(x.num(), b + b);
  return Rational::from_coprime(std::move(num), b);
}

RealBall sinpi_core(const Rational& r, int prec, TrigCache* cache) {
  // r in [0, 1/2].
  if (r.is_zero()) return RealBall::exact(Dyadic(), prec);
  if (r == Rational(1, 2)) return RealBall::exact(Dyadic(BigInt(1), 0), prec);
  if (r == Rational(1, 6))
    return RealBall::exact(Dyadic(BigInt(1), -1), prec);
  int wp = cache ? std::max(prec, cache->prec()) : prec;
  RealBall angle = pi_ball(wp + 8).mul_rational(r);
  return sin_ball(angle.round_to(wp));
}

RealBall cospi_core(const Rational& r, int prec, TrigCache* cache) {
  if (r.is_zero()) return RealBall::exact(Dyadic(BigInt(1), 0), prec);
  if (r == Rational(1, 2)) return RealBall::exact(Dyadic(), prec);
  if (r == Rational(1, 3))
    return RealBall::exact(Dyadic(BigInt(1), -1), prec);
  int wp = cache ? std::max(prec, cache->prec()) : prec;
  RealBall angle = pi_ball(wp + 8).mul_rational(r);
  return cos_ball(angle.round_to(wp));
}

}  // namespace

RealBall sinpi(const Rational& x, int prec, TrigCache* cache) {
  Rational y = reduce_mod2(x);
  bool flip = false;
  const BigInt& b = y.den();
  if (y.num() >= b) {  // y >= 1
    y = Rational::from_coprime(y.num() - b, b);
    flip = true;
  }
  if (y.num() + y.num() > b) {  // y > 1/2
    y = Rational::from_coprime(b - y.num(), b);
  }
  if (cache) {
    TrigCache::Key key{false, y.num(), y.den()};
    auto it = cache->entries_.find(key);
    if (it != cache->entries_.end()) {
      return flip ? -it->second : it->second;
    }
    RealBall value = sinpi_core(y, prec, cache);
    cache->entries_.emplace(std::move(key), value);
    return flip ? -value : value;
  }
  RealBall value = sinpi_core(y, prec, nullptr);
  return flip ? -value : value;
}

RealBall cospi(const Rational& x, int prec, TrigCache* cache) {
  Rational y = reduce_mod2(x);
  const BigInt& b0 = y.den();
  if (y.num() > b0) {  // y > 1
    y = Rational::from_coprime(b0 + b0 - y.num(), b0);
  }
  bool flip = false;
  const BigInt& b = y.den();
  if (y.num() + y.num() > b) {  // y > 1/2
    y = Rational::from_coprime(b - y.num(), b);
    flip = true;
  }
  if (cache) {
    TrigCache::Key key{true, y.num(), y.den()};
    auto it = cache->entries_.find(key);
    if (it != cache->entries_.end()) {
      return flip ? -it->second : it->second;
    }
    RealBall value = cospi_core(y, prec, cache);
    cache->entries_.emplace(std::move(key), value);
    return flip ? -value : value;
  }
  RealBall value = cospi_core(y, prec, nullptr);
  return flip ? -value : value;
}

}  // namespace rieszprod
