#pragma once

#include <functional>
#include <map>
#include <optional>

#include "rieszprod/ball.hpp"
#include "rieszprod/kernels.hpp"
#include "rieszprod/riesz.hpp"

namespace rieszprod::oracle {

// Exact frequency-to-coefficient map of a finite partial product. All
// coefficients here are real (the kernels are symmetric); conjugate symmetry
// means the table is symmetric under negation of the key.
struct SparseSpectrum {
  std::map<BigInt, RealBall> table;
  BigInt bandwidth;  // largest frequency in the table

  const RealBall* find(const BigInt& n) const {
    auto it = table.find(n);
    return it == table.end() ? nullptr : &it->second;
  }
};

inline constexpr std::uint64_t kExpansionGuard = 10'000'000;

// Literal convolution of the per-factor spectra placed at frequencies
// j * n_k. Under dissociation every output frequency is written exactly
// once; a collision raises InvariantViolation. The total size
// prod (2 m_k + 1) must stay within kExpansionGuard.
SparseSpectrum expand_product(const riesz::RieszSpec& spec,
                              int prec = 2 * kDefaultPrecision);

// Partial product of the degree-bounded unit-mean polynomials placed at the
// sequence terms n_j for j = j_first..j_last (coefficient of s n_j is
// phi(s/j)); same collision and size guards.
struct KahanePlan {
  sequences::IndexedSequence seq;
  std::int64_t j_first = 1;
  std::int64_t j_last = 1;
};

SparseSpectrum expand_product(const KahanePlan& plan,
                              int prec = 2 * kDefaultPrecision);

using Evaluator = std::function<RealBall(const Rational& t)>;

// Trapezoidal (equal-weight) quadrature of Q(e^{2 i pi t}) e^{-2 i pi n t}
// over [0,1]. Exact for band-limited Q by discrete orthogonality whenever
// nodes >= 2 * bandwidth + 1; fewer nodes are rejected.
RealBall quadrature_coeff(const Evaluator& evaluator, const BigInt& bandwidth,
                          const BigInt& n, const BigInt& nodes,
                          int prec = 2 * kDefaultPrecision,
                          TrigCache* cache = nullptr);

// Same, with Q synthesized from a (symmetric) spectrum table.
RealBall quadrature_coeff(const SparseSpectrum& spectrum, const BigInt& n,
                          const BigInt& nodes,
                          int prec = 2 * kDefaultPrecision);

struct QuadratureSweep {
  std::size_t checked = 0;
  bool all_overlap = false;  // every quadrature value overlaps its table entry
  BigInt worst_key;
  Dyadic worst_gap;
};

// Re-derives every table coefficient by quadrature, sharing the synthesized
// node values across frequencies. nodes must still clear 2*bandwidth + 1.
QuadratureSweep quadrature_table_check(const SparseSpectrum& spectrum,
                                       const BigInt& nodes,
                                       int prec = 2 * kDefaultPrecision);

struct DiffReport {
  Dyadic max_discrepancy;   // largest certified gap between entries
  BigInt worst_key;
  std::size_t compared = 0;
  bool pass = false;        // every pair overlaps or lies within tol
};

// Compares two coefficient tables over the union of their keys (a missing
// entry counts as exact zero); requires a nonempty common key set. The
// discrepancy of a pair is the distance between their balls (zero when they
// overlap).
DiffReport compare(const SparseSpectrum& a, const SparseSpectrum& b,
                   const Rational& tol);

}  // namespace rieszprod::oracle
