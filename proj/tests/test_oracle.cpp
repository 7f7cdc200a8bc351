#include <doctest.h>

#include "rieszprod/errors.hpp"
#include "rieszprod/oracle.hpp"

using namespace rieszprod;
using namespace rieszprod::sequences;
using namespace rieszprod::riesz;
using namespace rieszprod::oracle;

namespace {

RieszSpec small_spec() {
  return RieszSpec{custom_sequence({BigInt(1), BigInt(10), BigInt(100)}),
                   1,
                   {BigInt(1), BigInt(1), BigInt(1)},
                   std::nullopt,
                   {}};
}

}  // namespace

TEST_CASE("expansion of a three-factor product") {
  auto spec = small_spec();
  auto table = expand_product(spec, 256);
  CHECK(table.table.size() == 27);
  CHECK(table.bandwidth == BigInt(111));
  const RealBall* mass = table.find(BigInt(0));
  REQUIRE(mass);
  CHECK(mass->contains(Rational(1)));
  const RealBall* corner = table.find(BigInt(111));
  REQUIRE(corner);
  CHECK(corner->contains(Rational(1, 8)));
  // Conjugate symmetry (real coefficients here).
  for (const auto& [freq, value] : table.table) {
    const RealBall* mirror = table.find(-freq);
    REQUIRE(mirror);
    CHECK(mirror->overlaps(value));
  }
  // Agreement with the product-formula path on every frequency.
  TrigCache cache(128);
  for (const auto& [freq, value] : table.table) {
    CHECK(value.overlaps(riesz_coeff(freq, spec, 128, &cache)));
  }
  // Completeness: over the whole spectrum range, the product formula is
  // nonzero exactly on the expanded frequencies.
  BigInt bound = spectrum_bound(spec);
  CHECK(bound == table.bandwidth);
  for (BigInt n = -bound; n <= bound; n += BigInt(1)) {
    bool in_table = table.find(n) != nullptr;
    bool has_digits = decompose(n, spec).has_value();
    CHECK(in_table == has_digits);
    if (!in_table) {
      CHECK(riesz_coeff(n, spec, 128, &cache).mid().is_zero());
    }
  }
}

TEST_CASE("expansion rejects non-dissociated factors") {
  RieszSpec overlapping{custom_sequence({BigInt(1), BigInt(2), BigInt(4)}),
                        1,
                        {BigInt(1), BigInt(1), BigInt(1)},
                        std::nullopt,
                        {}};
  CHECK_THROWS_AS(expand_product(overlapping, 128), InvariantViolation);
}

TEST_CASE("expansion size guard") {
  std::vector<BigInt> terms;
  std::vector<BigInt> orders;
  BigInt t(1);
  for (int k = 0; k < 12; ++k) {
    terms.push_back(t);
    t *= BigInt(1000);
    orders.push_back(BigInt(3));
  }
  terms.push_back(t);
  RieszSpec wide{custom_sequence(terms), 1, orders, std::nullopt, {}};
  CHECK_THROWS_AS(expand_product(wide, 128), GuardError);
}

TEST_CASE("quadrature extracts kernel coefficients") {
  int prec = 256;
  TrigCache cache(prec);
  Evaluator eval = [&](const Rational& t) {
    return kernels::fejer_eval(BigInt(1), t, prec, &cache);
  };
  RealBall c1 = quadrature_coeff(eval, BigInt(1), BigInt(1), BigInt(7), prec,
                                 &cache);
  CHECK(c1.contains(Rational(1, 2)));
  RealBall c0 = quadrature_coeff(eval, BigInt(1), BigInt(0), BigInt(3), prec,
                                 &cache);
  CHECK(c0.contains(Rational(1)));
  // Out-of-band frequencies integrate to zero by discrete orthogonality.
  RealBall c9 = quadrature_coeff(eval, BigInt(1), BigInt(2), BigInt(5), prec,
                                 &cache);
  CHECK(c9.contains(Rational(0)));
  CHECK_THROWS_AS(
      quadrature_coeff(eval, BigInt(1), BigInt(1), BigInt(2), prec, &cache),
      ValidationError);
}

TEST_CASE("quadrature against a synthesized table") {
  auto spec = small_spec();
  auto table = expand_product(spec, 256);
  RealBall q = quadrature_coeff(table, BigInt(111), BigInt(223), 256);
  CHECK(q.overlaps(*table.find(BigInt(111))));
  RealBall q0 = quadrature_coeff(table, BigInt(0), BigInt(223), 256);
  CHECK(q0.contains(Rational(1)));
  auto sweep = quadrature_table_check(table, BigInt(223), 256);
  CHECK(sweep.all_overlap);
  CHECK(sweep.checked == 27);
}

TEST_CASE("degree-bounded plan expansion") {
  KahanePlan plan{erdos_taylor(7), 4, 7};
  auto table = expand_product(plan, 256);
  // Coefficient of n_7 alone is phi(1/7).
  const RealBall* at = table.find(BigInt(1957));
  REQUIRE(at);
  CHECK(at->contains(Rational(127, 343)));
  CHECK(table.find(BigInt(0))->contains(Rational(1)));
  // Quadrature against the synthesized polynomial of index 7 alone.
  auto poly = kernels::kahane_poly(7);
  TrigCache cache(256);
  Evaluator eval = [&](const Rational& t) {
    return kernels::kahane_eval(poly, t, 256, &cache);
  };
  RealBall c = quadrature_coeff(eval, BigInt(2), BigInt(1), BigInt(5), 256,
                                &cache);
  CHECK(c.contains(Rational(127, 343)));
}

TEST_CASE("table comparison") {
  auto spec = small_spec();
  auto a = expand_product(spec, 256);
  auto same = compare(a, a, Rational(0));
  CHECK(same.pass);
  CHECK(same.max_discrepancy.is_zero());
  CHECK(same.compared == 27);
  // Perturb one entry beyond any overlap.
  auto b = a;
  b.table[BigInt(111)] =
      RealBall::from_rational(Rational(1, 4), 256);
  auto diff = compare(a, b, Rational(1, 1000000));
  CHECK_FALSE(diff.pass);
  CHECK(diff.worst_key == BigInt(111));
  // A generous tolerance accepts the same gap.
  auto loose = compare(a, b, Rational(1));
  CHECK(loose.pass);
  // Disjoint tables are rejected.
  SparseSpectrum other;
  other.table.emplace(BigInt(5), RealBall::exact_int(BigInt(1), 64));
  other.bandwidth = BigInt(5);
  CHECK_THROWS_AS(compare(a, other, Rational(0)), ValidationError);
}
