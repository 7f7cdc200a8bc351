#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rieszprod/ball.hpp"
#include "rieszprod/numeric.hpp"
#include "rieszprod/riesz.hpp"
#include "rieszprod/sequences.hpp"

namespace rieszprod::ipcheck {

inline constexpr std::size_t kWindowGuard = 24;

// All nonempty subset sums over indices lo..hi (inclusive), sorted and
// deduplicated. The window width is guarded (exhaustive 2^w enumeration).
std::vector<BigInt> subset_sums(const sequences::IndexedSequence& seq,
                                std::size_t lo, std::size_t hi);

// Exhaustive verification that the subset sums over blocks l..l+q of the
// complete-sumset family equal {p_l, 2 p_l, ..., N p_l} where N is the
// product of the block sum counts. A mismatch raises InvariantViolation.
struct SumsetCertificate {
  std::size_t l = 0;
  std::size_t q = 0;
  BigInt step;       // p_l
  BigInt count;      // N
  std::size_t enumerated = 0;
  std::size_t beyond_run = 0;  // sums above N p_l (present once q >= 1)
  bool pass = false;
};

SumsetCertificate verify_sumset_identity(std::size_t l, std::size_t q);

// sigma_hat as a function of the frequency.
using CoeffSource = std::function<RealBall(const BigInt& n)>;

struct WindowReport {
  std::size_t k0 = 0;
  std::size_t width = 0;
  RealBall worst_deviation;
  std::vector<std::size_t> worst_subset;
  std::string source_tag;
  // For spec-backed sources: 1 - prod cos(pi/(m_k+2)) over the window (the
  // value the full-window subset attains) and the floor-certificate bound.
  std::optional<RealBall> predicted_deviation;
};

// max over nonempty F in {k0..k0+w-1} of |sigma_hat(sum_{k in F} n_k) - 1|,
// by exhaustive enumeration.
WindowReport ip_window_deviation(const CoeffSource& source,
                                 const std::string& source_tag,
                                 const sequences::IndexedSequence& seq,
                                 std::size_t k0, std::size_t width,
                                 int prec = kDefaultPrecision,
                                 const riesz::RieszSpec* spec = nullptr);

// Discrete probability measure on the circle: atoms with positive rational
// weights summing to one.
struct AtomicMeasure {
  std::vector<UnimodularPoint> atoms;
  std::vector<Rational> weights;

  void validate() const;
};

// mu_hat(n) = sum_i w_i lambda_i^n; |mu_hat(n) - 1| via complex enclosure.
RealBall atomic_deviation(const AtomicMeasure& mu, const BigInt& n, int prec,
                          TrigCache* cache = nullptr);

struct AtomicReport {
  WindowReport window;
  // Per atom: prod_{k} (1/2)|1 + lambda^{n_k}| over the window, and the
  // exponent-2 partial sum over the window.
  std::vector<RealBall> atom_products;
  std::vector<RealBall> atom_square_sums;
};

AtomicReport atomic_ip_check(const AtomicMeasure& mu,
                             const sequences::IndexedSequence& seq,
                             std::size_t k0, std::size_t width,
                             int prec = kDefaultPrecision);

// Union over q = 1..qmax of the per-block subset sums of the n_{k+1}=k n_k+1
// recurrence: block q sums over indices {2^q + 1, ..., 2^{q+1}}. The result
// is strictly increasing across blocks; per-block ranges are exposed for
// the scans. qmax is guarded at 3 (the last block enumerates 2^8 - 1 sums).
struct SumsetUnion {
  sequences::IndexedSequence seq;
  std::vector<std::pair<std::size_t, std::size_t>> block_ranges;  // 1-based,
                                                                  // inclusive
  std::size_t qmax = 0;
};

SumsetUnion subset_sum_union(std::size_t qmax);

// Per-theta scan of the sup-norm obstruction mechanism: exact additivity of
// signed fractional parts on disjoint subset pairs whenever all three
// distances are below 1/4, plus per-block maxima of |lambda^{n_k} - 1| and
// the exact block sums of {p_k theta}.
struct GinfSample {
  Rational theta;
  std::size_t additivity_checked = 0;
  std::vector<RealBall> block_max;
  std::vector<Rational> block_frac_sums;
};

std::vector<GinfSample> ginf_scan(const std::vector<Rational>& thetas,
                                  std::size_t qmax,
                                  int prec = kDefaultPrecision);

}  // namespace rieszprod::ipcheck
