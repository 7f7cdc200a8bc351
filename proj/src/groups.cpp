#include "rieszprod/groups.hpp"

#include <algorithm>

#include "rieszprod/errors.hpp"

namespace rieszprod::groups {

GroupScan gp_partial_sums(const UnimodularPoint& theta,
                          const sequences::IndexedSequence& seq, int exponent,
                          std::size_t K, int prec) {
  if (exponent != 0 && exponent != 1 && exponent != 2)
    throw ValidationError("exponent must be 1, 2, or 0 for the sup variant");
  if (K > seq.size()) throw ValidationError("horizon exceeds the sequence");
  GroupScan scan;
  scan.exponent = exponent;
  scan.horizon = K;
  if (theta.is_rational()) scan.theta_label = theta.rational_angle();
  TrigCache cache(prec);
  RealBall acc = RealBall::exact(Dyadic(), prec);
  for (std::size_t k = 1; k <= K; ++k) {
    RealBall d = circle_dist(seq.term(k), theta, prec, &cache);
    if (exponent == 0) {
      scan.values.push_back(d);
      continue;
    }
    acc += exponent == 2 ? d * d : d;
    scan.values.push_back(acc);
  }
  return scan;
}

namespace {

// Certified x >= y, retrying at doubled precision while undecidable. The
// recompute callback re-evaluates both sides at the requested precision.
template <typename Recompute>
bool certified_ge(RealBall x, RealBall y, int prec, const Recompute& again) {
  for (int wp = prec; wp <= 64 * prec; wp *= 2) {
    if (x.definitely_ge(y)) return true;
    if (x.definitely_lt(y)) return false;
    again(wp * 2, x, y);
  }
  throw PrecisionError("comparison undecidable at 64x working precision");
}

}  // namespace

DivergenceReport et_divergence_check(const Rational& theta, std::size_t K,
                                     int prec) {
  Rational angle = theta - Rational(theta.floor());
  if (angle.is_zero())
    throw ValidationError("theta must be a nonzero angle (lambda != 1)");
  auto seq = sequences::erdos_taylor(K + 1);
  UnimodularPoint lambda(angle);
  DivergenceReport report;
  report.theta = angle;
  report.horizon = K;
  TrigCache cache(prec);
  // eps = |lambda - 1| / 2, as an enclosure.
  auto eps_at = [&](int wp) {
    return circle_dist(BigInt(1), lambda, wp).mul_pow2(-1);
  };
  RealBall eps = eps_at(prec);
  RealBall acc = RealBall::exact(Dyadic(), prec);
  for (std::size_t k = 1; k <= K; ++k) {
    RealBall dk = circle_dist(seq.term(k), lambda, prec, &cache);
    RealBall dnext = circle_dist(seq.term(k + 1), lambda, prec, &cache);
    acc += dk;
    report.p1_partial.push_back(acc);
    // First disjunct: |lambda^{n_k} - 1| >= eps / k.
    bool first = false;
    try {
      first = certified_ge(
          dk, eps.div_bigint(BigInt(static_cast<long long>(k))), prec,
          [&](int wp, RealBall& x, RealBall& y) {
            x = circle_dist(seq.term(k), lambda, wp);
            y = eps_at(wp).div_bigint(BigInt(static_cast<long long>(k)));
          });
    } catch (const PrecisionError&) {
      first = false;
    }
    if (first) {
      report.branch.push_back(1);
      continue;
    }
    bool second = certified_ge(dnext, eps, prec,
                               [&](int wp, RealBall& x, RealBall& y) {
                                 x = circle_dist(seq.term(k + 1), lambda, wp);
                                 y = eps_at(wp);
                               });
    if (!second)
      throw InvariantViolation(
          "divergence disjunction failed at k = " + std::to_string(k) +
          " for theta = " + angle.to_string());
    report.branch.push_back(2);
  }
  return report;
}

Rational WitnessBound::lower() const {
  if (rational) return *rational;
  // 6283185/10^6 < 2 pi.
  return Rational(6283185, 1000000);
}

std::string WitnessBound::describe() const {
  if (rational) return rational->to_string();
  return "2pi";
}

WitnessCertificate witness_search(const std::vector<BigInt>& bases,
                                  const WitnessBound& C, std::size_t depth,
                                  const std::vector<std::size_t>* block_counts,
                                  int prec) {
  if (bases.size() < 2) throw ValidationError("need at least two base terms");
  if (depth + 1 > bases.size())
    throw ValidationError("depth exceeds the available base ratios");
  for (std::size_t i = 1; i < bases.size(); ++i) {
    if (bases[i] <= bases[i - 1])
      throw ValidationError("bases must increase strictly");
  }
  const Rational c_lo = C.lower();
  if (c_lo.signum() <= 0) throw ValidationError("bound constant must be > 0");
  Rational lo(0), hi(1);
  for (std::size_t l = 1; l <= depth; ++l) {
    Rational beta = c_lo * Rational(bases[l - 1], bases[l]);
    if (beta >= Rational(1, 2)) continue;  // no constraint at this level
    const Rational p(bases[l - 1]);
    // Bands {theta : {p theta} <= beta} = U_s [(s-beta)/p, (s+beta)/p].
    Rational mid = (lo + hi) * Rational(1, 2);
    BigInt s_lo = (lo * p - beta).ceil();
    BigInt s_hi = (hi * p + beta).floor();
    if (s_hi - s_lo > BigInt(1 << 20))
      throw GuardError("witness refinement band count too large");
    bool found = false;
    Rational best_lo, best_hi, best_gap;
    for (BigInt s = s_lo; s <= s_hi; s += BigInt(1)) {
      Rational band_lo = (Rational(s) - beta) / p;
      Rational band_hi = (Rational(s) + beta) / p;
      Rational nlo = std::max(lo, band_lo);
      Rational nhi = std::min(hi, band_hi);
      if (nlo > nhi) continue;
      Rational center = (nlo + nhi) * Rational(1, 2);
      Rational gap = (center - mid).abs();
      // Closest to the running midpoint; ties toward smaller theta.
      if (!found || gap < best_gap ||
          (gap == best_gap && center < best_lo)) {
        found = true;
        best_lo = nlo;
        best_hi = nhi;
        best_gap = gap;
      }
    }
    if (!found)
      throw ValidationError(
          "witness refinement became empty at step l = " + std::to_string(l));
    lo = best_lo;
    hi = best_hi;
  }
  WitnessCertificate cert;
  cert.theta = (lo + hi) * Rational(1, 2);
  if (cert.theta.is_zero()) cert.theta = hi * Rational(1, 2);
  if (cert.theta.is_zero())
    throw ValidationError("witness refinement pinned theta = 0");
  // Re-verify every inequality exactly.
  for (std::size_t l = 1; l <= depth; ++l) {
    WitnessEntry entry;
    entry.index = l;
    entry.frac_value = frac_dist_of_multiple(bases[l - 1], cert.theta);
    entry.bound = c_lo * Rational(bases[l - 1], bases[l]);
    if (entry.frac_value > entry.bound &&
        entry.bound < Rational(1, 2)) {
      throw InvariantViolation(
          "witness certificate failed re-verification at l = " +
          std::to_string(l));
    }
    cert.entries.push_back(std::move(entry));
  }
  if (block_counts) {
    TrigCache cache(prec);
    UnimodularPoint lambda(cert.theta);
    RealBall acc = RealBall::exact(Dyadic(), prec);
    for (std::size_t l = 1; l <= depth && l <= block_counts->size(); ++l) {
      for (std::size_t j = 1; j <= (*block_counts)[l - 1]; ++j) {
        RealBall d = circle_dist(
            BigInt(static_cast<long long>(j)) * bases[l - 1], lambda, prec,
            &cache);
        acc += d * d;
      }
      cert.block_square_sums.push_back(acc);
    }
  }
  return cert;
}

std::vector<BlockScanSample> g2_block_scan(
    const sequences::IndexedSequence& seq, const std::vector<Rational>& thetas,
    std::size_t K, int prec) {
  if (!seq.has_blocks())
    throw ValidationError("block scan needs a block-structured sequence");
  if (K > seq.size()) K = seq.size();
  std::vector<BlockScanSample> samples;
  for (const Rational& theta_raw : thetas) {
    Rational theta = theta_raw - Rational(theta_raw.floor());
    if (theta.is_zero())
      throw ValidationError("theta = 0 is excluded (lambda = 1)");
    BlockScanSample sample;
    sample.theta = theta;
    TrigCache cache(prec);
    UnimodularPoint lambda(theta);
    RealBall acc = RealBall::exact(Dyadic(), prec);
    for (std::size_t k = 1; k <= K; ++k) {
      RealBall d = circle_dist(seq.term(k), lambda, prec, &cache);
      acc += d * d;
      sample.partial.push_back(acc);
    }
    for (const auto& block : seq.blocks()) {
      if (block.end > K) break;
      Rational q(0);
      for (const BigInt& mult : block.multipliers) {
        Rational f = frac_dist_of_multiple(mult * block.base, theta);
        q += f * f;
      }
      sample.block_quantities.push_back(q);
    }
    // Labeled heuristic: the last quarter contributes (certified) and the
    // midpoint at the horizon is at least 5/4 of the half-horizon midpoint.
    if (K >= 4) {
      const RealBall& full = sample.partial[K - 1];
      const RealBall& half = sample.partial[K / 2 - 1];
      const RealBall& three_quarter = sample.partial[(3 * K) / 4 - 1];
      bool tail_active =
          (full - three_quarter).lower().signum() > 0;
      Dyadic five_fourth =
          (half.mid() + half.mid().mul_pow2(-2));
      bool ratio_grew = full.mid() >= five_fourth;
      sample.growing = tail_active && ratio_grew;
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace rieszprod::groups
