#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rieszprod/ball.hpp"
#include "rieszprod/kernels.hpp"
#include "rieszprod/sequences.hpp"

namespace rieszprod::riesz {

// A sequence paired with kernel orders m_k (and optional digit caps p_k).
// Kernel factors cover indices first .. last(); the remaining tail term of
// the sequence only bounds the final gap. Indices are the sequence's own
// (1-based), so a prefix drop does not renumber anything.
struct RieszSpec {
  sequences::IndexedSequence seq;
  std::size_t first = 1;
  std::vector<BigInt> orders;            // m_k for k = first..last()
  std::optional<std::vector<BigInt>> caps;  // p_k aligned with orders
  std::vector<Rational> eps;             // construction metadata, may be empty

  std::size_t last() const { return first + orders.size() - 1; }
  bool in_horizon(std::size_t k) const { return k >= first && k <= last(); }
  const BigInt& order_at(std::size_t k) const;
  const BigInt& cap_at(std::size_t k) const;
};

struct GapCertificate {
  std::size_t first = 0;
  std::size_t last = 0;
  std::vector<BigInt> gap_lengths;  // l_k = n_{k+1} - 2 sum_{j<=k} m_j n_j - 1
  bool lengths_increasing = false;  // strict growth over the horizon; a
                                    // prefix certificate, not a limit claim
};

// Verifies n_{k+1} - 2 sum_{j=first..k} m_j n_j >= 1 for every k in the
// horizon. Violations raise ValidationError naming k and the deficit.
GapCertificate check_dissociation(const RieszSpec& spec);

// Digits of the unique representation n = sum j_k n_k with |j_k| <= m_k.
struct Decomposition {
  std::map<std::size_t, BigInt> digits;  // nonzero digits only
};

// Greedy from the largest index; the dissociation bound makes the nearest
// multiple the only candidate at every step, so absence of a representation
// is detected exactly.
std::optional<Decomposition> decompose(const BigInt& n, const RieszSpec& spec);

// sigma_hat(n): 0 if n has no representation, otherwise the product of
// kernel coefficients over the nonzero digits. sigma_hat(0) = 1.
RealBall riesz_coeff(const BigInt& n, const RieszSpec& spec,
                     int prec = kDefaultPrecision, TrigCache* cache = nullptr);

// Certified floor for coefficients with digit support F and digits within
// the caps: product of the per-index coefficient floors.
RealBall coeff_lower_bound(const std::vector<std::size_t>& F,
                           const RieszSpec& spec,
                           int prec = kDefaultPrecision);

// Builds kernel orders for a sequence whose square-ratio series converges.
// Tail sums T_k of (n_k/n_{k+1})^2 drive eps_{k+1} ~ T_k^(1/3) (rounded up
// to a short rational); the prefix is dropped until the defining inequality
// sum (rho_k / eps_{k+1})^2 < 1/9 verifies exactly. If min_tail_product is
// given, the drop additionally continues until the certified product of
// cos(pi/(m_k+2)) over the horizon reaches it.
RieszSpec choose_m_sequence(const sequences::IndexedSequence& seq,
                            const std::optional<Rational>& min_tail_product,
                            int prec = kDefaultPrecision);

// Same construction over the base sequence (p_l) of a block-structured
// sequence, with caps p_l := q_l = sum of the block's multipliers, so the
// floor certificate covers every block subset sum. Requires
// sum (q_l p_l / p_{l+1})^2 to verify against 1/81 after the drop, plus
// q_l pi <= m_l + 2 for every retained block.
RieszSpec block_riesz_spec(const sequences::IndexedSequence& seq,
                           const std::optional<Rational>& min_tail_product,
                           int prec = kDefaultPrecision);

// Largest |n| carrying a nonzero coefficient: sum m_k n_k over the horizon.
BigInt spectrum_bound(const RieszSpec& spec);

// Certified product of cos(pi/(m_k+2)) for k = from..last(); the value the
// full-window subset attains.
RealBall cos_tail_product(const RieszSpec& spec, std::size_t from,
                          int prec = kDefaultPrecision,
                          TrigCache* cache = nullptr);

}  // namespace rieszprod::riesz
