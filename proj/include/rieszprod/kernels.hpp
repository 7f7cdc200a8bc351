#pragma once

#include <cstdint>
#include <vector>

#include "rieszprod/ball.hpp"
#include "rieszprod/bigint.hpp"
#include "rieszprod/rational.hpp"

namespace rieszprod::kernels {

// Fourier coefficient of the order-m nonnegative kernel
//   P(e^{2 i pi t}) = (2/(m+2)) | sum_{j=1}^{m+1} sin(j pi/(m+2)) e^{2 i pi j t} |^2,
// through the closed form
//   (1/(m+2)) ((m+2-|p|) cos(|p| pi/(m+2)) + sin(|p| pi/(m+2)) cot(pi/(m+2))).
// Exact 1 at p = 0 and exact 0 outside the spectrum {-m..m}; symmetric in p.
RealBall fejer_coeff(const BigInt& m, const BigInt& p,
                     int prec = kDefaultPrecision, TrigCache* cache = nullptr);

// Same coefficient evaluated as the literal sine-product sum
//   (2/(m+2)) sum_{j=1}^{m+1-p} sin((j+p) pi/(m+2)) sin(j pi/(m+2)),
// for 1 <= p <= m. Serves as the independent oracle for fejer_coeff.
RealBall fejer_coeff_direct(const BigInt& m, const BigInt& p,
                            int prec = kDefaultPrecision,
                            TrigCache* cache = nullptr);

// Pointwise value of the kernel at t (nonnegative up to ball radius).
RealBall fejer_eval(const BigInt& m, const Rational& t,
                    int prec = kDefaultPrecision, TrigCache* cache = nullptr);

// The coefficient floor 1 - 3 pi^2 (p_cap/(m+2))^2, valid for digits up to
// p_cap whenever p_cap * pi <= m + 2. Rejects caps that violate that bound.
RealBall fejer_coeff_floor(const BigInt& m, const BigInt& p_cap,
                           int prec = kDefaultPrecision);

// Certified check that p_cap * pi <= m + 2 (raises ValidationError if the
// opposite is certain, PrecisionError if undecidable at 16x precision).
void require_cap(const BigInt& m, const BigInt& p_cap,
                 int prec = kDefaultPrecision);

// The even piecewise-cubic bump phi = 9 (D*D) where D(t) = max(1-6|t|, 0):
//   phi(x) = 1 - 54 x^2 + 162 |x|^3          for |x| <= 1/6,
//   phi(x) = 2 (1 - 3|x|)^3                  for 1/6 <= |x| <= 1/3,
//   phi(x) = 0                               for |x| >= 1/3.
// The normalization 9 = 1 / (D*D)(0) is computed, not hard-coded.
Rational kahane_phi(const Rational& x);

// The leading factor a with a * (D*D)(0) = 1, from exact integration.
Rational kahane_normalizer();

// P_j(e^{2 i pi u}) = sum_s phi(s/j) e^{2 i pi s u}: nonnegative polynomial
// of degree <= floor(j/3) with unit mean. Coefficients are exact rationals.
struct KahanePoly {
  std::int64_t index = 0;
  std::vector<Rational> coeff;  // coeff[s] = phi(s/j), s = 0..degree
  std::int64_t degree() const {
    return static_cast<std::int64_t>(coeff.size()) - 1;
  }
  Rational coefficient(std::int64_t s) const;  // symmetric, 0 off-spectrum
};

KahanePoly kahane_poly(std::int64_t j);

RealBall kahane_eval(const KahanePoly& poly, const Rational& u,
                     int prec = kDefaultPrecision, TrigCache* cache = nullptr);

struct NonnegReport {
  RealBall minimum;
  Rational argmin;
  std::size_t grid = 0;
};

// Evaluates P_j on a uniform grid (grid >= 4j) and reports the minimum.
// A grid value certified negative raises InvariantViolation.
NonnegReport kahane_nonneg_check(std::int64_t j, std::size_t grid,
                                 int prec = kDefaultPrecision);

struct PhiBound {
  Rational c;
  Rational gamma;
  std::int64_t j0 = 0;
};

// Certified pair (c, gamma) with phi(x) >= 1 - c x^2 on [-gamma, gamma],
// proved by exact polynomial sign checks on each piece; c is minimal up to
// the search granularity (1/4). j0 = floor(1/gamma) + 1.
PhiBound derive_phi_bound();

// Exact nonnegativity certificate for a rational-coefficient polynomial on
// [lo, hi] via Bernstein coefficients with subdivision. Returns false when
// positivity cannot be certified (including when it is genuinely violated).
bool poly_nonneg_on(const std::vector<Rational>& coeffs, const Rational& lo,
                    const Rational& hi, int max_depth = 24);

}  // namespace rieszprod::kernels
