#include "rieszprod/riesz.hpp"

#include <algorithm>

#include "rieszprod/errors.hpp"

namespace rieszprod::riesz {

const BigInt& RieszSpec::order_at(std::size_t k) const {
  if (!in_horizon(k))
    throw ValidationError("index " + std::to_string(k) +
                          " outside the kernel horizon " +
                          std::to_string(first) + ".." + std::to_string(last()));
  return orders[k - first];
}

const BigInt& RieszSpec::cap_at(std::size_t k) const {
  if (!caps) throw ValidationError("spec carries no digit caps");
  if (!in_horizon(k))
    throw ValidationError("cap index outside the kernel horizon");
  return (*caps)[k - first];
}

GapCertificate check_dissociation(const RieszSpec& spec) {
  if (spec.orders.empty())
    throw ValidationError("spec has an empty kernel horizon");
  if (spec.first < 1 || spec.last() > spec.seq.size())
    throw ValidationError("kernel horizon exceeds the sequence");
  if (spec.first > spec.seq.size() - 1)
    throw ValidationError(
        "horizon needs at least one successor term to constrain");
  for (const BigInt& m : spec.orders) {
    if (m < BigInt(1)) throw ValidationError("kernel orders must be >= 1");
  }
  if (spec.caps && spec.caps->size() != spec.orders.size())
    throw ValidationError("caps must align with kernel orders");
  GapCertificate cert;
  cert.first = spec.first;
  cert.last = spec.last();
  BigInt weighted;  // 2 sum_{j<=k} m_j n_j
  // The last factor has no successor term; its constraint is vacuous on a
  // finite horizon, so gaps stop one index earlier.
  std::size_t checkable = std::min(spec.last(), spec.seq.size() - 1);
  for (std::size_t k = spec.first; k <= checkable; ++k) {
    const BigInt& m = spec.order_at(k);
    weighted += (m + m) * spec.seq.term(k);
    BigInt slack = spec.seq.term(k + 1) - weighted;
    if (slack < BigInt(1)) {
      throw ValidationError(
          "dissociation fails at k = " + std::to_string(k) + ": deficit " +
          (BigInt(1) - slack).to_decimal());
    }
    cert.gap_lengths.push_back(slack - BigInt(1));
  }
  cert.lengths_increasing = true;
  for (std::size_t i = 1; i < cert.gap_lengths.size(); ++i) {
    if (cert.gap_lengths[i] <= cert.gap_lengths[i - 1]) {
      cert.lengths_increasing = false;
      break;
    }
  }
  return cert;
}

std::optional<Decomposition> decompose(const BigInt& n,
                                       const RieszSpec& spec) {
  Decomposition out;
  BigInt rest = n;
  for (std::size_t k = spec.last() + 1; k-- > spec.first;) {
    if (rest.is_zero()) break;
    const BigInt& term = spec.seq.term(k);
    BigInt digit = nearest_int(Rational(rest, term));
    if (digit.abs() > spec.order_at(k)) return std::nullopt;
    if (!digit.is_zero()) {
      rest -= digit * term;
      out.digits.emplace(k, std::move(digit));
    }
  }
  if (!rest.is_zero()) return std::nullopt;
  return out;
}

RealBall riesz_coeff(const BigInt& n, const RieszSpec& spec, int prec,
                     TrigCache* cache) {
  auto digits = decompose(n, spec);
  if (!digits) return RealBall::exact(Dyadic(), prec);
  RealBall product = RealBall::exact_int(BigInt(1), prec);
  for (const auto& [k, j] : digits->digits) {
    product = product * kernels::fejer_coeff(spec.order_at(k), j, prec, cache);
  }
  return product;
}

RealBall coeff_lower_bound(const std::vector<std::size_t>& F,
                           const RieszSpec& spec, int prec) {
  RealBall product = RealBall::exact_int(BigInt(1), prec);
  for (std::size_t k : F) {
    RealBall factor =
        kernels::fejer_coeff_floor(spec.order_at(k), spec.cap_at(k), prec);
    // Multiplying per-index lower bounds is only sound when each factor is
    // nonnegative; a singleton support needs no product step.
    if (F.size() > 1 && !factor.definitely_ge(Rational(0))) {
      throw ValidationError(
          "floor vacuous: the per-index factor at k = " + std::to_string(k) +
          " is not certified nonnegative (cap too large for the order)");
    }
    product = product * factor;
  }
  return product;
}

BigInt spectrum_bound(const RieszSpec& spec) {
  BigInt bound;
  for (std::size_t k = spec.first; k <= spec.last(); ++k) {
    bound += spec.order_at(k) * spec.seq.term(k);
  }
  return bound;
}

RealBall cos_tail_product(const RieszSpec& spec, std::size_t from, int prec,
                          TrigCache* cache) {
  if (from < spec.first) from = spec.first;
  RealBall product = RealBall::exact_int(BigInt(1), prec);
  for (std::size_t k = from; k <= spec.last(); ++k) {
    product =
        product * cospi(Rational(BigInt(1), spec.order_at(k) + BigInt(2)),
                        prec, cache);
  }
  return product;
}

namespace {

// Short rational upper bound for the cube root of T in (0, 1):
// round T up to p/2^64, then take ceil(cbrt(p * 2^128)) / 2^64.
Rational cbrt_upper(const Rational& T) {
  if (T.signum() <= 0) throw ArithmeticError("cbrt of a nonpositive value");
  const std::size_t scale = 64;
  BigInt p = (T * Rational(BigInt(1) << scale)).ceil();
  BigInt root = BigInt::icbrt_ceil(p << (2 * scale));
  return Rational(root, BigInt(1) << scale);
}

struct EpsPlan {
  std::vector<Rational> eps;     // eps_first = 0, then one per step
  std::vector<BigInt> orders;    // m_k from the bracket formula
  Rational defining_sum;         // sum (rho_k / eps_{k+1})^2
};

// Builds eps and m over values v_first..v_count with weights w_k (the
// numerators of the ratio series: w_k v_k / v_{k+1}). For the plain
// construction w_k = 1; for the block construction w_k = q_k. The base rule
// eps_{k+1} ~ T_k^(1/3) is scaled up (still capped below 1/2) when the
// defining sum misses its budget: larger eps only shrink the sum, so the
// scale loop finds a witness whenever a uniform scaling of the rule works.
std::optional<EpsPlan> build_eps_plan(
    const std::vector<BigInt>& values, const std::vector<Rational>& weights,
    std::size_t first, const Rational& budget) {
  const std::size_t K = values.size();
  if (first + 1 > K) return std::nullopt;
  // Tail sums T_k = sum_{j>=k} (w_j v_j / v_{j+1})^2.
  std::vector<Rational> tails(K, Rational(0));
  Rational acc(0);
  for (std::size_t k = K - 1; k >= first; --k) {
    Rational rho = weights[k - 1] * Rational(values[k - 1], values[k]);
    acc += rho * rho;
    tails[k - 1] = acc;
    if (k == 1) break;
  }
  const Rational cap(49, 100);
  for (int scale_log = 0; scale_log <= 10; ++scale_log) {
    const Rational scale(BigInt(1) << static_cast<std::size_t>(scale_log));
    EpsPlan plan;
    plan.eps.push_back(Rational(0));  // eps at index `first`
    plan.defining_sum = Rational(0);
    bool viable = true;
    for (std::size_t k = first; k + 1 <= K; ++k) {
      Rational eps_next = std::min(cap, scale * cbrt_upper(tails[k - 1]));
      const Rational& eps_cur = plan.eps.back();
      Rational rho = weights[k - 1] * Rational(values[k - 1], values[k]);
      Rational contribution = (rho / eps_next) * (rho / eps_next);
      plan.defining_sum += contribution;
      // m_k = [(eps_{k+1} v_{k+1} - eps_k v_k) / (2 v_k)], integer part.
      Rational bracket = (eps_next * Rational(values[k]) -
                          eps_cur * Rational(values[k - 1])) /
                         (Rational(2) * Rational(values[k - 1]));
      if (bracket < Rational(1)) {
        viable = false;
        break;
      }
      plan.orders.push_back(bracket.trunc());
      plan.eps.push_back(eps_next);
    }
    if (viable && plan.defining_sum < budget) return plan;
  }
  return std::nullopt;
}

// The slack identity behind the dissociation bound:
// v_{k+1} - 2 sum m_j v_j >= (1 - eps_{k+1}) v_{k+1} >= 1.
bool verify_slack(const std::vector<BigInt>& values, std::size_t first,
                  const EpsPlan& plan) {
  Rational weighted(0);
  for (std::size_t k = first; k + 1 <= values.size(); ++k) {
    const BigInt& m = plan.orders[k - first];
    weighted += Rational((m + m) * values[k - 1]);
    Rational slack = Rational(values[k]) - weighted;
    Rational floor_bound =
        (Rational(1) - plan.eps[k - first + 1]) * Rational(values[k]);
    if (slack < floor_bound || floor_bound < Rational(1)) return false;
  }
  return true;
}

}  // namespace

RieszSpec choose_m_sequence(const sequences::IndexedSequence& seq,
                            const std::optional<Rational>& min_tail_product,
                            int prec) {
  const std::size_t K = seq.size();
  if (K < 2) throw ValidationError("need at least two terms");
  std::vector<Rational> unit_weights(K - 1, Rational(1));
  const Rational budget(1, 9);
  std::string trail;
  for (std::size_t first = 1; first + 1 <= K; ++first) {
    auto plan = build_eps_plan(seq.terms(), unit_weights, first, budget);
    if (!plan) continue;
    if (!verify_slack(seq.terms(), first, *plan)) continue;
    RieszSpec spec{seq, first, plan->orders, std::nullopt, plan->eps};
    check_dissociation(spec);
    if (min_tail_product) {
      RealBall product = cos_tail_product(spec, first, prec);
      if (!product.definitely_ge(*min_tail_product)) {
        trail = "tail product below target at drop " + std::to_string(first);
        continue;
      }
    }
    return spec;
  }
  throw InfeasibleError(
      "square-ratio series too large on every suffix; the defining sum "
      "never verified below 1/9" +
      (trail.empty() ? std::string() : " (" + trail + ")"));
}

RieszSpec block_riesz_spec(const sequences::IndexedSequence& seq,
                           const std::optional<Rational>& min_tail_product,
                           int prec) {
  if (!seq.has_blocks())
    throw ValidationError("block spec needs a block-structured sequence");
  const auto& blocks = seq.blocks();
  // Base values p_1..p_L, extended by a final base when the generator
  // recorded one (so the last block also gets a kernel order).
  std::vector<BigInt> bases;
  for (const auto& b : blocks) bases.push_back(b.base);
  if (seq.bases().size() > blocks.size() &&
      seq.bases().size() == blocks.size() + 2) {
    // Generators store p_1..p_{L+1}; blocks may start at l = 2.
    bases = seq.bases();
    bases.erase(bases.begin());
  } else if (seq.bases().size() == blocks.size() + 1) {
    bases = seq.bases();
  }
  std::vector<Rational> weights;  // q_l = sum of multipliers of block l
  for (const auto& b : blocks) {
    BigInt q;
    for (const BigInt& mult : b.multipliers) q += mult;
    weights.push_back(Rational(q));
  }
  const Rational budget(1, 81);
  for (std::size_t first = 1; first + 1 <= bases.size(); ++first) {
    auto plan = build_eps_plan(bases, weights, first, budget);
    if (!plan) continue;
    if (!verify_slack(bases, first, *plan)) continue;
    // Caps q_l must clear q_l pi <= m_l + 2 on every retained block.
    bool caps_ok = true;
    std::vector<BigInt> caps;
    for (std::size_t l = first; l + 1 <= bases.size(); ++l) {
      BigInt q = weights[l - 1].num();
      try {
        kernels::require_cap(plan->orders[l - first], q, prec);
      } catch (const ValidationError&) {
        caps_ok = false;
        break;
      }
      caps.push_back(q);
    }
    if (!caps_ok) continue;
    sequences::IndexedSequence base_seq("bases:" + seq.family(), bases);
    RieszSpec spec{base_seq, first, plan->orders, caps, plan->eps};
    check_dissociation(spec);
    if (min_tail_product) {
      RealBall product = cos_tail_product(spec, first, prec);
      if (!product.definitely_ge(*min_tail_product)) continue;
    }
    return spec;
  }
  throw InfeasibleError(
      "weighted square-ratio series too large on every block suffix; the "
      "defining sum never verified below 1/81");
}

}  // namespace rieszprod::riesz
