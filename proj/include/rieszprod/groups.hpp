#pragma once

#include <optional>
#include <vector>

#include "rieszprod/ball.hpp"
#include "rieszprod/numeric.hpp"
#include "rieszprod/sequences.hpp"

namespace rieszprod::groups {

// Partial-sum scan of sum_k |lambda^{n_k} - 1|^p. Exponent 0 stands for the
// sup norm: values are then the running |lambda^{n_k} - 1| themselves.
struct GroupScan {
  Rational theta_label;  // 0/1 placeholder when the angle is a ball
  int exponent = 2;      // 1, 2, or 0 for the sup variant
  std::size_t horizon = 0;
  std::vector<RealBall> values;  // partial sums, or running values for sup
};

GroupScan gp_partial_sums(const UnimodularPoint& theta,
                          const sequences::IndexedSequence& seq, int exponent,
                          std::size_t K, int prec = kDefaultPrecision);

// Finite-horizon check of the divergence mechanism for the recurrence
// n_{k+1} = k n_k + 1: with eps = |lambda - 1|/2, every k <= K satisfies
// |lambda^{n_k} - 1| >= eps/k or |lambda^{n_{k+1}} - 1| >= eps. Also
// reports the exponent-1 partial sums (expected to grow).
struct DivergenceReport {
  Rational theta;
  std::size_t horizon = 0;
  std::vector<int> branch;       // 1 = first disjunct certified, 2 = second
  std::vector<RealBall> p1_partial;
};

DivergenceReport et_divergence_check(const Rational& theta, std::size_t K,
                                     int prec = kDefaultPrecision);

// The constant C of the witness bound: an exact rational, or 2*pi (certified
// through a rational lower bound, which only tightens the certificate).
struct WitnessBound {
  std::optional<Rational> rational;
  bool two_pi = false;

  static WitnessBound from_rational(Rational c) {
    return WitnessBound{std::move(c), false};
  }
  static WitnessBound twopi() { return WitnessBound{std::nullopt, true}; }
  // A rational lower bound on the constant (tight enough for desk use).
  Rational lower() const;
  std::string describe() const;
};

struct WitnessEntry {
  std::size_t index = 0;     // l
  Rational frac_value;       // {p_l theta}, exact
  Rational bound;            // C_lower * p_l / p_{l+1}, exact
};

// One angle theta with {p_l theta} <= C p_l / p_{l+1} for l = 1..depth,
// produced by nested-interval refinement and re-verified exactly.
struct WitnessCertificate {
  Rational theta;
  std::vector<WitnessEntry> entries;
  // For block sequences: partial sums over sum_{j<=r_l} |lambda^{j p_l}-1|^2
  // (expected bounded along the construction).
  std::vector<RealBall> block_square_sums;
};

WitnessCertificate witness_search(const std::vector<BigInt>& bases,
                                  const WitnessBound& C, std::size_t depth,
                                  const std::vector<std::size_t>* block_counts
                                  = nullptr,
                                  int prec = kDefaultPrecision);

// Exponent-2 scan over a block sequence: partial sums at the horizon, the
// per-block quantities sum_{j<=r_l} {j theta p_l}^2 (exact), and a labeled
// growth heuristic (last-quarter contribution certified positive and the
// full sum at least 5/4 of the half-horizon sum by midpoint).
struct BlockScanSample {
  Rational theta;
  std::vector<RealBall> partial;          // p = 2 partial sums, k = 1..K
  std::vector<Rational> block_quantities; // one per block within horizon
  bool growing = false;                   // heuristic evidence, not a proof
};

std::vector<BlockScanSample> g2_block_scan(
    const sequences::IndexedSequence& seq, const std::vector<Rational>& thetas,
    std::size_t K, int prec = kDefaultPrecision);

}  // namespace rieszprod::groups
