#include <doctest.h>

#include "rieszprod/errors.hpp"
#include "rieszprod/ipcheck.hpp"

using namespace rieszprod;
using namespace rieszprod::sequences;
using namespace rieszprod::ipcheck;

TEST_CASE("subset sums") {
  auto seq = custom_sequence({BigInt(1), BigInt(2), BigInt(3)});
  auto sums = subset_sums(seq, 1, 3);
  REQUIRE(sums.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(sums[i] == BigInt(i + 1));
  // Single index.
  auto single = subset_sums(seq, 2, 2);
  CHECK(single == std::vector<BigInt>{BigInt(2)});
  // Quartic family, block l = 2: subset sums fill {1..10}.
  auto cs = complete_sumset_sequence(3);
  auto block = subset_sums(cs, 1, 4);
  CHECK(block.size() == 10);
  CHECK(block.front() == BigInt(1));
  CHECK(block.back() == BigInt(10));
  CHECK_THROWS_AS(subset_sums(seq, 1, 4), ValidationError);
  // Width guard.
  auto wide = geometric_sequence(BigInt(2), 30);
  CHECK_THROWS_AS(subset_sums(wide, 1, 30), GuardError);
}

TEST_CASE("block sumset closed form") {
  auto c20 = verify_sumset_identity(2, 0);
  CHECK(c20.pass);
  CHECK(c20.step == BigInt(1));
  CHECK(c20.count == BigInt(10));
  CHECK(c20.beyond_run == 0);
  auto c30 = verify_sumset_identity(3, 0);
  CHECK(c30.pass);
  CHECK(c30.step == BigInt(10));
  CHECK(c30.count == BigInt(45));
  CHECK(c30.beyond_run == 0);
  auto c21 = verify_sumset_identity(2, 1);
  CHECK(c21.pass);
  CHECK(c21.step == BigInt(1));
  CHECK(c21.count == BigInt(450));
  // The two-block enumeration also reaches past the closed-form run (up to
  // the total sum 460); those extras belong to the next instance.
  CHECK(c21.beyond_run == 10);
  CHECK_THROWS_AS(verify_sumset_identity(1, 0), ValidationError);
  CHECK_THROWS_AS(verify_sumset_identity(3, 1), GuardError);  // width 25
}

TEST_CASE("window deviation for degenerate coefficient sources") {
  auto seq = custom_sequence(
      {BigInt(1), BigInt(10), BigInt(100), BigInt(1000)});
  CoeffSource lebesgue = [](const BigInt& n) {
    return n.is_zero() ? RealBall::exact_int(BigInt(1), 128)
                       : RealBall::exact(Dyadic(), 128);
  };
  auto wr = ip_window_deviation(lebesgue, "table", seq, 1, 3, 128);
  CHECK(wr.worst_deviation.contains(Rational(1)));
  CHECK(wr.width == 3);
  CoeffSource dirac_at_one = [](const BigInt&) {
    return RealBall::exact_int(BigInt(1), 128);
  };
  auto wr2 = ip_window_deviation(dirac_at_one, "table", seq, 1, 3, 128);
  CHECK(wr2.worst_deviation.is_exact());
  CHECK(wr2.worst_deviation.mid().is_zero());
  CHECK_THROWS_AS(ip_window_deviation(lebesgue, "table", seq, 1, 0, 128),
                  ValidationError);
  CHECK_THROWS_AS(ip_window_deviation(lebesgue, "table", seq, 3, 3, 128),
                  ValidationError);
}

TEST_CASE("window deviation with a spec source matches the tail product") {
  auto seq = square_exponent_sequence(BigInt(2), 12);
  auto spec = riesz::choose_m_sequence(seq, std::nullopt, 128);
  TrigCache cache(128);
  CoeffSource source = [&](const BigInt& n) {
    return riesz::riesz_coeff(n, spec, 128, &cache);
  };
  std::size_t k0 = spec.last() - 5;
  auto report = ip_window_deviation(source, "riesz-spec", spec.seq, k0, 6,
                                    128, &spec);
  REQUIRE(report.predicted_deviation.has_value());
  // The worst subset is the whole window and attains 1 - prod cos.
  CHECK(report.worst_subset.size() == 6);
  CHECK(report.worst_deviation.overlaps(*report.predicted_deviation));
  // Deviation shrinks (weakly) as the window moves right.
  Dyadic prev;
  bool first = true;
  for (std::size_t start = spec.first; start + 2 <= spec.last(); ++start) {
    auto w = ip_window_deviation(source, "riesz-spec", spec.seq, start, 3,
                                 128);
    if (!first) CHECK(w.worst_deviation.mid() <= prev);
    prev = w.worst_deviation.mid();
    first = false;
  }
}

TEST_CASE("window deviation bounded by the floor certificate") {
  // Block spec with caps: every window subset's digits sit within the
  // caps, so 1 - prod(floor) dominates the deviation.
  std::vector<BigInt> bases;
  std::vector<std::vector<BigInt>> mults;
  BigInt p(1);
  BigInt ratio(400);
  for (int l = 0; l < 6; ++l) {
    bases.push_back(p);
    mults.push_back({BigInt(1), BigInt(2)});
    p *= ratio;
    ratio *= BigInt(4);
  }
  auto spec = riesz::block_riesz_spec(sequences::block_sequence(bases, mults),
                                      std::nullopt, 128);
  TrigCache cache(128);
  CoeffSource source = [&](const BigInt& n) {
    return riesz::riesz_coeff(n, spec, 128, &cache);
  };
  std::size_t k0 = spec.last() - 2;
  auto report = ip_window_deviation(source, "riesz-spec", spec.seq, k0, 3,
                                    128, &spec);
  std::vector<std::size_t> window = {k0, k0 + 1, k0 + 2};
  RealBall floor = riesz::coeff_lower_bound(window, spec, 128);
  RealBall cap = RealBall::exact_int(BigInt(1), 128) - floor;
  CHECK_FALSE(report.worst_deviation.definitely_gt(cap));
}

TEST_CASE("atomic measures with ball angles") {
  // A ball carrying 1/3 must reproduce the rational-angle results.
  auto seq = custom_sequence({BigInt(2), BigInt(4), BigInt(7), BigInt(12)});
  AtomicMeasure exact_angle{{UnimodularPoint(Rational(1, 3))}, {Rational(1)}};
  AtomicMeasure ball_angle{
      {UnimodularPoint(RealBall::from_rational(Rational(1, 3), 192))},
      {Rational(1)}};
  auto a = atomic_ip_check(exact_angle, seq, 1, 4, 128);
  auto b = atomic_ip_check(ball_angle, seq, 1, 4, 128);
  CHECK(a.window.worst_deviation.overlaps(b.window.worst_deviation));
  for (std::size_t i = 0; i < a.atom_products.size(); ++i) {
    CHECK(a.atom_products[i].overlaps(b.atom_products[i]));
    CHECK(a.atom_square_sums[i].overlaps(b.atom_square_sums[i]));
  }
}

TEST_CASE("atomic measures") {
  AtomicMeasure good{{UnimodularPoint(Rational(0)),
                      UnimodularPoint(Rational(1, 3))},
                     {Rational(1, 4), Rational(3, 4)}};
  good.validate();
  AtomicMeasure bad{{UnimodularPoint(Rational(0))}, {Rational(1, 2)}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  // Dirac at lambda = 1: deviation zero, products one, square sums zero.
  auto seq = custom_sequence(
      {BigInt(1), BigInt(10), BigInt(100), BigInt(1000)});
  AtomicMeasure dirac{{UnimodularPoint(Rational(0))}, {Rational(1)}};
  auto rep = atomic_ip_check(dirac, seq, 1, 3, 128);
  CHECK(rep.window.worst_deviation.contains(Rational(0)));
  CHECK(rep.atom_products[0].contains(Rational(1)));
  CHECK(rep.atom_square_sums[0].contains(Rational(0)));

  // Cube root of unity on powers of three: every power is trivial.
  auto g3 = geometric_sequence(BigInt(3), 8);
  AtomicMeasure third{{UnimodularPoint(Rational(1, 3))}, {Rational(1)}};
  auto rep3 = atomic_ip_check(third, g3, 2, 4, 128);
  CHECK(rep3.window.worst_deviation.contains(Rational(0)));
  CHECK(rep3.atom_products[0].contains(Rational(1)));

  // lambda = -1 on odd terms: coefficient -1, deviation 2, product 0.
  auto odd = custom_sequence({BigInt(3), BigInt(5), BigInt(9), BigInt(17)});
  AtomicMeasure half{{UnimodularPoint(Rational(1, 2))}, {Rational(1)}};
  auto rep2 = atomic_ip_check(half, odd, 1, 4, 128);
  CHECK(rep2.window.worst_deviation.contains(Rational(2)));
  CHECK(rep2.atom_products[0].contains(Rational(0)));

  // Deviation uses the complex modulus: a quarter rotation on a window
  // whose sums stay = 1 mod 4 gives |i - 1| = sqrt(2).
  auto ones = custom_sequence({BigInt(1), BigInt(4), BigInt(16), BigInt(64)});
  AtomicMeasure quarter{{UnimodularPoint(Rational(1, 4))}, {Rational(1)}};
  auto repq = atomic_ip_check(quarter, ones, 1, 1, 128);
  RealBall dev = repq.window.worst_deviation;
  CHECK((dev * dev).contains(Rational(2)));
}

TEST_CASE("per-block subset sum union") {
  auto u = subset_sum_union(2);
  CHECK(u.seq.term(1) == BigInt(5));
  CHECK(u.seq.term(2) == BigInt(16));
  CHECK(u.seq.term(3) == BigInt(21));
  CHECK(u.block_ranges[0].first == 1);
  CHECK(u.block_ranges[0].second == 3);
  CHECK(u.block_ranges[1].first == 4);
  CHECK(u.block_ranges[1].second == 18);
  CHECK(u.seq.size() == 18);
  // Block q = 2 sums the values 65, 326, 1957, 13700.
  CHECK(u.seq.term(4) == BigInt(65));
  CHECK(u.seq.term(18) == BigInt(65 + 326 + 1957 + 13700));
  CHECK_THROWS_AS(subset_sum_union(0), GuardError);
  CHECK_THROWS_AS(subset_sum_union(4), GuardError);
}

TEST_CASE("signed fractional part additivity scan") {
  auto samples = ginf_scan({Rational(1, 100), Rational(1, 2), Rational(1, 5)},
                           2, 128);
  REQUIRE(samples.size() == 3);
  // theta = 1/100: the q = 1 block sums are 1/20 + 4/25 = 21/100.
  CHECK(samples[0].block_frac_sums[0] == Rational(21, 100));
  // theta = 1/2: {5/2} + {16/2} = 1/2; q = 2 block adds 1/2 more.
  CHECK(samples[1].block_frac_sums[0] == Rational(1, 2));
  CHECK(samples[1].block_frac_sums[1] == Rational(1));
  // theta = 1/5: p_3 = 5 vanishes, p_4 = 16 leaves 1/5.
  CHECK(samples[2].block_frac_sums[0] == Rational(1, 5));
  // Block maxima certify |lambda^{n_k} - 1| = 2 for some odd sum at 1/2.
  CHECK(samples[1].block_max[0].contains(Rational(2)));
  for (const auto& s : samples) CHECK(s.additivity_checked > 0);
  CHECK_THROWS_AS(ginf_scan({Rational(0)}, 2, 128), ValidationError);
}
