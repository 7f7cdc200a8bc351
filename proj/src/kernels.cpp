#include "rieszprod/kernels.hpp"

#include <algorithm>

#include "rieszprod/errors.hpp"

namespace rieszprod::kernels {

namespace {

constexpr long long kLoopGuard = 1 << 20;

long long loop_count(const BigInt& m) {
  if (!m.fits_int64() || m.to_int64() > kLoopGuard)
    throw GuardError("kernel order too large for a direct summation");
  return m.to_int64();
}

}  // namespace

RealBall fejer_coeff(const BigInt& m, const BigInt& p, int prec,
                     TrigCache* cache) {
  if (m < BigInt(1)) throw ValidationError("kernel order must be >= 1");
  BigInt q = p.abs();
  if (q.is_zero()) return RealBall::exact_int(BigInt(1), prec);
  if (q > m) return RealBall::exact(Dyadic(), prec);
  const BigInt mp2 = m + BigInt(2);
  const Rational unit(BigInt(1), mp2);
  const Rational arg(q, mp2);
  RealBall cos_q = cospi(arg, prec, cache);
  RealBall sin_q = sinpi(arg, prec, cache);
  RealBall cot = cospi(unit, prec, cache) / sinpi(unit, prec, cache);
  RealBall sum = RealBall::exact_int(mp2 - q, prec) * cos_q + sin_q * cot;
  return sum.mul_rational(unit);
}

RealBall fejer_coeff_direct(const BigInt& m, const BigInt& p, int prec,
                            TrigCache* cache) {
  if (p < BigInt(1) || p > m)
    throw ValidationError("direct sum needs 1 <= p <= m");
  long long mm = loop_count(m);
  long long pp = p.to_int64();
  const BigInt mp2 = m + BigInt(2);
  RealBall acc = RealBall::exact(Dyadic(), prec);
  for (long long j = 1; j <= mm + 1 - pp; ++j) {
    RealBall a = sinpi(Rational(BigInt(j + pp), mp2), prec, cache);
    RealBall b = sinpi(Rational(BigInt(j), mp2), prec, cache);
    acc.add_exact(a * b);
  }
  return acc.round_to(prec).mul_rational(Rational(BigInt(2), mp2));
}

RealBall fejer_eval(const BigInt& m, const Rational& t, int prec,
                    TrigCache* cache) {
  long long mm = loop_count(m);
  const BigInt mp2 = m + BigInt(2);
  RealBall re = RealBall::exact(Dyadic(), prec);
  RealBall im = RealBall::exact(Dyadic(), prec);
  for (long long j = 1; j <= mm + 1; ++j) {
    RealBall s = sinpi(Rational(BigInt(j), mp2), prec, cache);
    Rational phase = Rational(BigInt(2 * j)) * t;
    re.add_exact(s * cospi(phase, prec, cache));
    im.add_exact(s * sinpi(phase, prec, cache));
  }
  re = re.round_to(prec);
  im = im.round_to(prec);
  RealBall norm = re * re + im * im;
  return norm.mul_rational(Rational(BigInt(2), mp2));
}

void require_cap(const BigInt& m, const BigInt& p_cap, int prec) {
  if (p_cap < BigInt(1)) throw ValidationError("cap must be >= 1");
  const Rational bound(m + BigInt(2));
  for (int wp = prec; wp <= 16 * prec; wp *= 2) {
    RealBall prod = pi_ball(wp).mul_bigint(p_cap);
    if (prod.upper().compare(bound) <= 0) return;
    if (prod.lower().compare(bound) > 0)
      throw ValidationError("cap violated: " + p_cap.to_decimal() +
                            " * pi > " + (m + BigInt(2)).to_decimal());
  }
  throw PrecisionError("cap check undecidable; raise the precision");
}

RealBall fejer_coeff_floor(const BigInt& m, const BigInt& p_cap, int prec) {
  require_cap(m, p_cap, prec);
  RealBall pi = pi_ball(prec);
  Rational ratio(p_cap, m + BigInt(2));
  RealBall term = (pi * pi).mul_rational(ratio * ratio * Rational(3));
  return RealBall::exact_int(BigInt(1), prec) - term;
}

Rational kahane_normalizer() {
  // (D*D)(0) = integral of D^2 = 2 * int_0^{1/6} (1-6t)^2 dt, computed by
  // exact integration of the quadratic: int (1-6t)^2 = t - 6t^2 + 12t^3.
  Rational t(1, 6);
  Rational integral = t - Rational(6) * t * t + Rational(12) * t * t * t;
  Rational mass = Rational(2) * integral;
  return mass.reciprocal();
}

Rational kahane_phi(const Rational& x) {
  static const Rational a = kahane_normalizer();
  Rational u = x.abs();
  if (u >= Rational(1, 3)) return Rational(0);
  if (u <= Rational(1, 6)) {
    // a * (D*D)(u) with (D*D)(u) = 1/9 - 6u^2 + 18u^3 on [0, 1/6].
    Rational dd = Rational(1, 9) - Rational(6) * u * u +
                  Rational(18) * u * u * u;
    return a * dd;
  }
  // (D*D)(u) = 2 (1-3u)^3 / 9 on [1/6, 1/3].
  Rational w = Rational(1) - Rational(3) * u;
  return a * Rational(2, 9) * w * w * w;
}

Rational KahanePoly::coefficient(std::int64_t s) const {
  std::int64_t q = s < 0 ? -s : s;
  if (q >= static_cast<std::int64_t>(coeff.size())) return Rational(0);
  return coeff[static_cast<std::size_t>(q)];
}

KahanePoly kahane_poly(std::int64_t j) {
  if (j < 1) throw ValidationError("kahane_poly index must be >= 1");
  KahanePoly poly;
  poly.index = j;
  // phi(s/j) vanishes once 3s >= j, so the last surviving s is (j-1)/3.
  std::int64_t smax = (j - 1) / 3;
  for (std::int64_t s = 0; s <= smax; ++s) {
    poly.coeff.push_back(kahane_phi(Rational(s, j)));
  }
  while (poly.coeff.size() > 1 && poly.coeff.back().is_zero())
    poly.coeff.pop_back();
  return poly;
}

RealBall kahane_eval(const KahanePoly& poly, const Rational& u, int prec,
                     TrigCache* cache) {
  RealBall acc = RealBall::from_rational(poly.coeff[0], prec);
  for (std::size_t s = 1; s < poly.coeff.size(); ++s) {
    Rational phase = Rational(BigInt(2 * static_cast<long long>(s))) * u;
    RealBall c = cospi(phase, prec, cache);
    acc.add_exact(c.mul_rational(poly.coeff[s]).mul_pow2(1));
  }
  return acc.round_to(prec);
}

NonnegReport kahane_nonneg_check(std::int64_t j, std::size_t grid, int prec) {
  if (grid < 4 * static_cast<std::size_t>(j))
    throw ValidationError("grid must have at least 4j points");
  KahanePoly poly = kahane_poly(j);
  TrigCache cache(prec);
  NonnegReport report;
  report.grid = grid;
  Dyadic best_mid;
  bool first = true;
  for (std::size_t g = 0; g < grid; ++g) {
    Rational u(static_cast<long long>(g), static_cast<long long>(grid));
    RealBall value = kahane_eval(poly, u, prec, &cache);
    if (value.upper().signum() < 0) {
      throw InvariantViolation(
          "kernel value certified negative at u = " + u.to_string() +
          " for j = " + std::to_string(j));
    }
    if (first) {
      report.minimum = value;
      report.argmin = u;
      best_mid = value.mid();
      first = false;
    } else {
      if (value.mid() < best_mid) {
        best_mid = value.mid();
        report.argmin = u;
      }
      report.minimum = RealBall::enclose_min(report.minimum, value);
    }
  }
  return report;
}

namespace {

// Binomial coefficients as rationals, small n.
Rational binom(std::size_t n, std::size_t k) {
  Rational out(1);
  for (std::size_t i = 0; i < k; ++i) {
    out *= Rational(BigInt(static_cast<long long>(n - i)),
                    BigInt(static_cast<long long>(i + 1)));
  }
  return out;
}

Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

// Maps p(x) on [lo, hi] to q(t) = p(lo + (hi-lo) t) on [0, 1].
std::vector<Rational> compose_affine(const std::vector<Rational>& coeffs,
                                     const Rational& lo, const Rational& hi) {
  Rational span = hi - lo;
  std::vector<Rational> out(coeffs.size(), Rational(0));
  // Horner-style: process from the highest coefficient down.
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    // out = out * (lo + span t) + coeffs[i]
    std::vector<Rational> next(out.size(), Rational(0));
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k].is_zero()) continue;
      next[k] += out[k] * lo;
      if (k + 1 < next.size()) next[k + 1] += out[k] * span;
    }
    next[0] += coeffs[i];
    out = std::move(next);
  }
  return out;
}

bool bernstein_nonneg(const std::vector<Rational>& mono, int depth) {
  const std::size_t d = mono.size() - 1;
  // Bernstein coefficients on [0,1]: b_i = sum_{k<=i} C(i,k)/C(d,k) a_k.
  std::vector<Rational> b(d + 1, Rational(0));
  bool all_nonneg = true;
  for (std::size_t i = 0; i <= d; ++i) {
    Rational acc(0);
    for (std::size_t k = 0; k <= i; ++k) {
      if (mono[k].is_zero()) continue;
      acc += binom(i, k) / binom(d, k) * mono[k];
    }
    b[i] = acc;
    if (acc.signum() < 0) all_nonneg = false;
  }
  if (all_nonneg) return true;
  // A genuinely negative value refutes immediately.
  if (eval_poly(mono, Rational(0)).signum() < 0) return false;
  if (eval_poly(mono, Rational(1)).signum() < 0) return false;
  if (eval_poly(mono, Rational(1, 2)).signum() < 0) return false;
  if (depth <= 0) return false;
  // Subdivide at 1/2 and recurse on both halves.
  std::vector<Rational> left = compose_affine(mono, Rational(0),
                                              Rational(1, 2));
  std::vector<Rational> right = compose_affine(mono, Rational(1, 2),
                                               Rational(1));
  return bernstein_nonneg(left, depth - 1) &&
         bernstein_nonneg(right, depth - 1);
}

}  // namespace

bool poly_nonneg_on(const std::vector<Rational>& coeffs, const Rational& lo,
                    const Rational& hi, int max_depth) {
  if (coeffs.empty()) return true;
  if (lo > hi) throw ValidationError("empty interval");
  std::vector<Rational> unit = compose_affine(coeffs, lo, hi);
  return bernstein_nonneg(unit, max_depth);
}

namespace {

// phi(x) - (1 - c x^2) >= 0 on [0, gamma], piece by piece.
bool phi_bound_holds(const Rational& c, const Rational& gamma) {
  const Rational sixth(1, 6);
  Rational a = std::min(gamma, sixth);
  // Piece 1: (c - 54) x^2 + 162 x^3 on [0, a].
  std::vector<Rational> piece1 = {Rational(0), Rational(0), c - Rational(54),
                                  Rational(162)};
  if (!poly_nonneg_on(piece1, Rational(0), a)) return false;
  if (gamma <= sixth) return true;
  // Piece 2: 2 (1-3x)^3 - 1 + c x^2 = 1 - 18 x + (54 + c) x^2 - 54 x^3.
  std::vector<Rational> piece2 = {Rational(1), Rational(-18),
                                  Rational(54) + c, Rational(-54)};
  return poly_nonneg_on(piece2, sixth, gamma);
}

}  // namespace

PhiBound derive_phi_bound() {
  // gamma as close to the support edge as the grid allows; the bound holds
  // there, so wider validity means a smaller j0.
  const Rational gamma(33, 100);
  // Binary search the minimal integer c, then refine at granularity 1/4.
  long long lo = 0, hi = 1024;
  if (!phi_bound_holds(Rational(hi), gamma))
    throw InvariantViolation("phi bound certificate failed at c = 1024");
  while (lo < hi) {
    long long mid = (lo + hi) / 2;
    if (phi_bound_holds(Rational(mid), gamma)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  Rational c(hi);
  const Rational base = c;
  for (int quarters = 1; quarters <= 3; ++quarters) {
    Rational candidate = base - Rational(quarters, 4);
    if (!phi_bound_holds(candidate, gamma)) break;
    c = candidate;
  }
  PhiBound out;
  out.c = c;
  out.gamma = gamma;
  out.j0 = (Rational(1) / gamma).floor().to_int64() + 1;
  return out;
}

}  // namespace rieszprod::kernels
