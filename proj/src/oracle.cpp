#include "rieszprod/oracle.hpp"

#include <utility>
#include <vector>

#include "rieszprod/errors.hpp"

namespace rieszprod::oracle {

namespace {

struct Factor {
  BigInt placement;               // n_k
  std::vector<RealBall> coeffs;   // index 0..degree, symmetric
};

SparseSpectrum convolve(const std::vector<Factor>& factors, int prec) {
  std::uint64_t size = 1;
  for (const Factor& f : factors) {
    std::uint64_t width = 2 * (f.coeffs.size() - 1) + 1;
    if (size > kExpansionGuard / width)
      throw GuardError("expansion size exceeds the guard of " +
                       std::to_string(kExpansionGuard) + " frequencies");
    size *= width;
  }
  SparseSpectrum out;
  out.table.emplace(BigInt(0), RealBall::exact_int(BigInt(1), prec));
  for (const Factor& f : factors) {
    std::map<BigInt, RealBall> next;
    const std::int64_t degree =
        static_cast<std::int64_t>(f.coeffs.size()) - 1;
    for (const auto& [freq, value] : out.table) {
      for (std::int64_t j = -degree; j <= degree; ++j) {
        const RealBall& c = f.coeffs[static_cast<std::size_t>(j < 0 ? -j : j)];
        BigInt shifted = freq + BigInt(j) * f.placement;
        auto [it, inserted] = next.emplace(shifted, value * c);
        if (!inserted)
          throw InvariantViolation(
              "frequency collision at " + it->first.to_decimal() +
              "; the factors are not dissociated");
      }
    }
    out.table = std::move(next);
  }
  if (!out.table.empty()) out.bandwidth = out.table.rbegin()->first;
  return out;
}

}  // namespace

SparseSpectrum expand_product(const riesz::RieszSpec& spec, int prec) {
  std::vector<Factor> factors;
  TrigCache cache(prec);
  for (std::size_t k = spec.first; k <= spec.last(); ++k) {
    const BigInt& m = spec.order_at(k);
    if (!m.fits_int64() || m.to_int64() > (1 << 20))
      throw GuardError("kernel order too large to expand literally");
    Factor f;
    f.placement = spec.seq.term(k);
    for (BigInt p(0); p <= m; p += BigInt(1)) {
      f.coeffs.push_back(kernels::fejer_coeff(m, p, prec, &cache));
    }
    factors.push_back(std::move(f));
  }
  return convolve(factors, prec);
}

SparseSpectrum expand_product(const KahanePlan& plan, int prec) {
  if (plan.j_first < 1 || plan.j_last < plan.j_first ||
      static_cast<std::size_t>(plan.j_last) > plan.seq.size())
    throw ValidationError("factor index range out of bounds");
  std::vector<Factor> factors;
  for (std::int64_t j = plan.j_first; j <= plan.j_last; ++j) {
    kernels::KahanePoly poly = kernels::kahane_poly(j);
    Factor f;
    f.placement = plan.seq.term(static_cast<std::size_t>(j));
    for (const Rational& c : poly.coeff) {
      f.coeffs.push_back(RealBall::from_rational(c, prec));
    }
    factors.push_back(std::move(f));
  }
  return convolve(factors, prec);
}

RealBall quadrature_coeff(const Evaluator& evaluator, const BigInt& bandwidth,
                          const BigInt& n, const BigInt& nodes, int prec,
                          TrigCache* cache) {
  if (nodes < bandwidth + bandwidth + BigInt(1))
    throw ValidationError(
        "quadrature needs at least 2*bandwidth + 1 nodes for exactness");
  if (!nodes.fits_int64() || nodes.to_int64() > (1 << 22))
    throw GuardError("node count too large");
  const long long N = nodes.to_int64();
  TrigCache local(prec);
  TrigCache* tc = cache ? cache : &local;
  RealBall acc_re = RealBall::exact(Dyadic(), prec);
  RealBall acc_im = RealBall::exact(Dyadic(), prec);
  for (long long i = 0; i < N; ++i) {
    Rational t(i, N);
    RealBall q = evaluator(t);
    // e^{-2 i pi n t}
    Rational phase = Rational(n + n) * t;
    RealBall c = cospi(phase, prec, tc);
    RealBall s = sinpi(phase, prec, tc);
    acc_re.add_exact(q * c);
    acc_im.add_exact(q * s);
  }
  acc_re = acc_re.round_to(prec);
  acc_im = acc_im.round_to(prec);
  // The coefficient of a real symmetric density is real; the imaginary part
  // must vanish up to enclosure width.
  RealBall im = acc_im.div_bigint(nodes);
  if (!im.contains_zero())
    throw InvariantViolation("quadrature imaginary part certified nonzero");
  return acc_re.div_bigint(nodes);
}

RealBall quadrature_coeff(const SparseSpectrum& spectrum, const BigInt& n,
                          const BigInt& nodes, int prec) {
  // Validate symmetry once, then synthesize with the positive half.
  for (const auto& [freq, value] : spectrum.table) {
    const RealBall* mirror = spectrum.find(-freq);
    if (!mirror || !mirror->overlaps(value))
      throw ValidationError("spectrum table is not symmetric at " +
                            freq.to_decimal());
  }
  TrigCache cache(prec);
  Evaluator synth = [&](const Rational& t) {
    RealBall acc = RealBall::exact(Dyadic(), prec);
    const RealBall* zero = spectrum.find(BigInt(0));
    if (zero) acc = *zero;
    for (const auto& [freq, value] : spectrum.table) {
      if (freq.signum() <= 0) continue;
      Rational phase = Rational(freq + freq) * t;
      acc += value.mul_pow2(1) * cospi(phase, prec, &cache);
    }
    return acc;
  };
  return quadrature_coeff(synth, spectrum.bandwidth, n, nodes, prec, &cache);
}

QuadratureSweep quadrature_table_check(const SparseSpectrum& spectrum,
                                       const BigInt& nodes, int prec) {
  if (nodes < spectrum.bandwidth + spectrum.bandwidth + BigInt(1))
    throw ValidationError(
        "quadrature needs at least 2*bandwidth + 1 nodes for exactness");
  if (!nodes.fits_int64() || nodes.to_int64() > (1 << 20))
    throw GuardError("node count too large");
  const long long N = nodes.to_int64();
  TrigCache cache(prec);
  // Node values of the synthesized density, computed once.
  std::vector<RealBall> q_at;
  q_at.reserve(static_cast<std::size_t>(N));
  for (long long i = 0; i < N; ++i) {
    Rational t(i, N);
    RealBall acc = RealBall::exact(Dyadic(), prec);
    const RealBall* zero = spectrum.find(BigInt(0));
    if (zero) acc = *zero;
    for (const auto& [freq, value] : spectrum.table) {
      if (freq.signum() <= 0) continue;
      acc.add_exact(value.mul_pow2(1) *
                    cospi(Rational(freq + freq) * t, prec, &cache));
    }
    q_at.push_back(acc.round_to(prec));
  }
  QuadratureSweep sweep;
  sweep.all_overlap = true;
  for (const auto& [freq, value] : spectrum.table) {
    RealBall acc = RealBall::exact(Dyadic(), prec);
    for (long long i = 0; i < N; ++i) {
      Rational phase = Rational(freq + freq) * Rational(i, N);
      acc.add_exact(q_at[static_cast<std::size_t>(i)] *
                    cospi(phase, prec, &cache));
    }
    RealBall coeff = acc.round_to(prec).div_bigint(nodes);
    ++sweep.checked;
    if (!coeff.overlaps(value)) {
      sweep.all_overlap = false;
      Dyadic gap = std::max(coeff.lower() - value.upper(),
                            value.lower() - coeff.upper());
      if (gap > sweep.worst_gap) {
        sweep.worst_gap = gap;
        sweep.worst_key = freq;
      }
    }
  }
  return sweep;
}

DiffReport compare(const SparseSpectrum& a, const SparseSpectrum& b,
                   const Rational& tol) {
  bool common = false;
  for (const auto& [key, value] : a.table) {
    if (b.table.count(key)) {
      common = true;
      break;
    }
  }
  if (!common) throw ValidationError("coefficient tables share no keys");
  DiffReport report;
  report.pass = true;
  auto distance = [](const RealBall& x, const RealBall& y) {
    // Certified gap between the balls; zero when they overlap.
    Dyadic gap_lo = x.lower() - y.upper();
    Dyadic gap_hi = y.lower() - x.upper();
    Dyadic gap = std::max(gap_lo, gap_hi);
    return gap.signum() > 0 ? gap : Dyadic();
  };
  auto account = [&](const BigInt& key, const RealBall& x, const RealBall& y) {
    Dyadic d = distance(x, y);
    ++report.compared;
    if (d > report.max_discrepancy) {
      report.max_discrepancy = d;
      report.worst_key = key;
    }
    if (!d.is_zero() && d.to_rational() > tol) report.pass = false;
  };
  const RealBall zero_a = RealBall::exact(Dyadic(), 64);
  for (const auto& [key, value] : a.table) {
    const RealBall* other = b.find(key);
    account(key, value, other ? *other : zero_a);
  }
  for (const auto& [key, value] : b.table) {
    if (!a.table.count(key)) account(key, zero_a, value);
  }
  return report;
}

}  // namespace rieszprod::oracle
