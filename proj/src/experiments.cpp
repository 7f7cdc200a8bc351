#include "rieszprod/experiments.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "rieszprod/errors.hpp"
#include "rieszprod/groups.hpp"
#include "rieszprod/ipcheck.hpp"
#include "rieszprod/oracle.hpp"

namespace rieszprod::experiments {

namespace {

namespace seqs = rieszprod::sequences;
namespace rz = rieszprod::riesz;
namespace krn = rieszprod::kernels;
namespace orc = rieszprod::oracle;
namespace grp = rieszprod::groups;
namespace ipc = rieszprod::ipcheck;

constexpr std::size_t kBallDigits = 30;

struct Context {
  Json params;
  int prec = kDefaultPrecision;
  std::uint64_t seed = 1;
  Json checks = Json::array();
  Json results = Json::object();
  Json series = Json::object();
  std::map<std::string, std::string> files;
  bool pass = true;

  void check(const std::string& name, bool ok, const std::string& detail) {
    checks.push_back(Json{{"name", name}, {"pass", ok}, {"detail", detail}});
    if (!ok) pass = false;
  }
  std::int64_t param_int(const char* key, std::int64_t fallback) const {
    if (params.contains(key)) {
      const auto& v = params.at(key);
      return v.is_string() ? std::stoll(v.get<std::string>())
                           : v.get<std::int64_t>();
    }
    return fallback;
  }
  std::string param_str(const char* key, const std::string& fallback) const {
    if (params.contains(key)) return params.at(key).get<std::string>();
    return fallback;
  }
};

Json ball_cell(const RealBall& b) {
  return Json{{"value", b.mid().to_decimal(kBallDigits)},
              {"radius", b.rad().to_decimal(4)},
              {"mid_hex", b.mid().to_hex()},
              {"rad_hex", b.rad().to_hex()}};
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<Rational> sample_angles(std::uint64_t seed, std::size_t count) {
  std::uint64_t state = seed;
  std::vector<Rational> out;
  while (out.size() < count) {
    std::uint64_t den = 2 + splitmix64(state) % 1000000;
    std::uint64_t num = 1 + splitmix64(state) % (den - 1);
    out.emplace_back(BigInt(num), BigInt(den));
  }
  return out;
}

void add_series(Context& ctx, const std::string& kind,
                std::vector<std::string> header,
                std::vector<std::vector<std::string>> rows) {
  Json h = Json::array();
  for (auto& c : header) h.push_back(c);
  Json r = Json::array();
  for (auto& row : rows) {
    Json jr = Json::array();
    for (auto& cell : row) jr.push_back(cell);
    r.push_back(jr);
  }
  ctx.series[kind] = Json{{"header", h}, {"rows", r}};
}

// ---- individual experiments ----

void run_prop3_demo(Context& ctx) {
  // Orders large enough that every per-index floor factor is positive.
  auto seq = seqs::custom_sequence(
      {BigInt(1), BigInt(100), BigInt(10000), BigInt(1000000)});
  rz::RieszSpec spec{seq, 1,
                     {BigInt(9), BigInt(12), BigInt(9)},
                     std::vector<BigInt>{BigInt(1), BigInt(2), BigInt(1)},
                     {}};
  auto cert = rz::check_dissociation(spec);
  ctx.check("dissociation-certificate", true,
            "gap lengths " + cert.gap_lengths[0].to_decimal() + ", " +
                cert.gap_lengths[1].to_decimal() + ", " +
                cert.gap_lengths[2].to_decimal());
  auto table = orc::expand_product(spec, 2 * ctx.prec);
  ctx.results["spectrum_size"] = table.table.size();
  ctx.files["spectrum.csv"] = io::spectrum_to_csv(table);

  // Product identity at subset sums of the terms.
  TrigCache cache(ctx.prec);
  bool identity_ok = true;
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    BigInt sum;
    RealBall expect = RealBall::exact_int(BigInt(1), ctx.prec);
    for (std::size_t k = 1; k <= 3; ++k) {
      if (mask & (1ull << (k - 1))) {
        sum += seq.term(k);
        expect = expect * cospi(Rational(BigInt(1),
                                         spec.order_at(k) + BigInt(2)),
                                ctx.prec, &cache);
      }
    }
    RealBall coeff = rz::riesz_coeff(sum, spec, ctx.prec, &cache);
    if (!coeff.overlaps(expect)) identity_ok = false;
  }
  ctx.check("cosine-product-identity", identity_ok,
            "all 7 subset sums match the kernel cosine products");

  // Floor certificate against every admissible capped digit vector.
  bool floor_ok = true;
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    std::vector<std::size_t> F;
    BigInt sum;
    for (std::size_t k = 1; k <= 3; ++k) {
      if (mask & (1ull << (k - 1))) {
        F.push_back(k);
        sum += spec.cap_at(k) * seq.term(k);
      }
    }
    RealBall floor = rz::coeff_lower_bound(F, spec, ctx.prec);
    RealBall coeff = rz::riesz_coeff(sum, spec, ctx.prec, &cache);
    if (coeff.upper() < floor.lower()) floor_ok = false;
  }
  ctx.check("coefficient-floor", floor_ok,
            "certified floor stays below the coefficient on capped digits");
}

void run_cor4(Context& ctx) {
  std::string family = ctx.param_str("family", "pow2sq");
  std::size_t count = static_cast<std::size_t>(ctx.param_int("count", 12));
  std::size_t k0 = static_cast<std::size_t>(ctx.param_int("k0", 6));
  std::size_t width = static_cast<std::size_t>(ctx.param_int("width", 6));
  auto seq = io::generate_sequence(family, ctx.params, count);
  auto spec = rz::choose_m_sequence(seq, std::nullopt, ctx.prec);
  auto cert = rz::check_dissociation(spec);
  ctx.results["first"] = spec.first;
  ctx.results["last"] = spec.last();
  Json orders = Json::array();
  for (const BigInt& m : spec.orders) orders.push_back(m.to_decimal());
  ctx.results["orders"] = orders;
  ctx.check("dissociation-certificate", true,
            std::string("gap lengths strictly increasing: ") +
                (cert.lengths_increasing ? "yes" : "no"));

  TrigCache cache(ctx.prec);
  ipc::CoeffSource source = [&](const BigInt& n) {
    return rz::riesz_coeff(n, spec, ctx.prec, &cache);
  };
  auto window =
      ipc::ip_window_deviation(source, "riesz-spec", spec.seq, k0, width,
                               ctx.prec, &spec);
  ctx.results["window"] = Json{{"k0", k0},
                               {"width", width},
                               {"deviation", ball_cell(window.worst_deviation)}};
  if (window.predicted_deviation) {
    ctx.results["window"]["predicted"] =
        ball_cell(*window.predicted_deviation);
    bool bounded = !window.worst_deviation.definitely_gt(
        *window.predicted_deviation);
    bool attained = window.worst_deviation.overlaps(
        *window.predicted_deviation);
    ctx.check("deviation-vs-product-floor", bounded && attained,
              "worst deviation equals 1 - prod cos over the tail window");
  }
  // Deviation as the window start moves right.
  std::vector<std::vector<std::string>> rows;
  std::vector<Dyadic> mids;
  for (std::size_t start = spec.first; start + width - 1 <= spec.last();
       ++start) {
    auto w = ipc::ip_window_deviation(source, "riesz-spec", spec.seq, start,
                                      width, ctx.prec, &spec);
    mids.push_back(w.worst_deviation.mid());
    rows.push_back({std::to_string(start),
                    w.worst_deviation.mid().to_decimal(kBallDigits),
                    w.worst_deviation.rad().to_decimal(4)});
  }
  add_series(ctx, "deviation-vs-k0", {"k0", "deviation", "radius"}, rows);
  bool monotone = true;
  for (std::size_t i = 1; i < mids.size(); ++i) {
    if (mids[i] > mids[i - 1]) monotone = false;
  }
  ctx.check("deviation-monotone-in-k0", monotone,
            "window deviation does not grow as the window moves right");
}

void run_prop5(Context& ctx) {
  std::size_t blocks = static_cast<std::size_t>(ctx.param_int("blocks", 6));
  BigInt ratio = BigInt::from_decimal(ctx.param_str("ratio", "400"));
  BigInt growth = BigInt::from_decimal(ctx.param_str("growth", "4"));
  std::vector<BigInt> bases;
  std::vector<std::vector<BigInt>> mults;
  BigInt p(1);
  for (std::size_t l = 0; l < blocks; ++l) {
    bases.push_back(p);
    mults.push_back({BigInt(1), BigInt(2)});
    p *= ratio;
    ratio *= growth;
  }
  auto seq = seqs::block_sequence(bases, mults);
  auto spec = rz::block_riesz_spec(seq, std::nullopt, ctx.prec);
  ctx.results["first"] = spec.first;
  Json orders = Json::array();
  for (const BigInt& m : spec.orders) orders.push_back(m.to_decimal());
  ctx.results["orders"] = orders;
  ctx.check("construction", true,
            "kernel orders built over the base sequence with caps q_l");

  // Certified floors for tail windows, and the 0.9 threshold.
  std::vector<std::vector<std::string>> rows;
  RealBall best = RealBall::exact(Dyadic(), ctx.prec);
  for (std::size_t l0 = spec.first; l0 <= spec.last(); ++l0) {
    std::vector<std::size_t> F;
    for (std::size_t l = l0; l <= spec.last(); ++l) F.push_back(l);
    RealBall floor = rz::coeff_lower_bound(F, spec, ctx.prec);
    rows.push_back({std::to_string(l0),
                    floor.mid().to_decimal(kBallDigits),
                    floor.rad().to_decimal(4)});
    best = RealBall::enclose_max(best, floor);
  }
  add_series(ctx, "floor-vs-window-start", {"l0", "floor", "radius"}, rows);
  ctx.check("tail-floor-exceeds-0.9", best.definitely_ge(Rational(9, 10)),
            "certified subset-sum floor above 0.9 on a tail window");

  // Floor really bounds the coefficient on sampled block subset sums.
  TrigCache cache(ctx.prec);
  bool bound_ok = true;
  for (std::size_t l = spec.first; l <= spec.last(); ++l) {
    BigInt sum = spec.cap_at(l) * spec.seq.term(l);  // full block sum
    RealBall coeff = rz::riesz_coeff(sum, spec, ctx.prec, &cache);
    RealBall floor = rz::coeff_lower_bound({l}, spec, ctx.prec);
    if (coeff.upper() < floor.lower()) bound_ok = false;
  }
  ctx.check("floor-below-coefficient", bound_ok,
            "per-block full sums respect the certified floor");
}

void run_thm_cor6(Context& ctx) {
  // A sequence with exact division inside runs and jumps at S.
  std::vector<BigInt> terms;
  BigInt v(3);
  auto push_run = [&](int doublings) {
    terms.push_back(v);
    for (int i = 0; i < doublings; ++i) {
      v += v;
      terms.push_back(v);
    }
  };
  push_run(3);               // 3, 6, 12, 24
  v = BigInt(100000);        // jump (24 does not divide 100000)
  push_run(2);               // 1e5, 2e5, 4e5
  v = BigInt::from_decimal("300000000000");  // second jump
  push_run(3);
  v = BigInt::from_decimal("7000000000000000000000000");  // third jump
  push_run(2);
  auto seq = seqs::custom_sequence(terms);
  auto S = seqs::divisibility_profile(seq);
  Json sj = Json::array();
  for (std::size_t k : S) sj.push_back(k);
  ctx.results["S"] = sj;
  auto chain = seqs::factor_chain(seq, S);
  ctx.check("doubling-bound", chain.doubling_bound_ok,
            "q_l <= 2 q_{r_l,l} on every chain block");
  // Reconstruction + the series comparison sum_l (q_l p_l / p_{l+1})^2 <=
  // 4 sum_{k in S} (n_k / n_{k+1})^2.
  Rational lhs(0), rhs(0);
  for (std::size_t i = 0; i + 1 < chain.blocks.size(); ++i) {
    const auto& b = chain.blocks[i];
    Rational r = Rational(b.q_sum) * Rational(b.base) /
                 Rational(chain.blocks[i + 1].base);
    lhs += r * r;
  }
  for (std::size_t k : S) {
    if (k + 1 <= seq.size()) {
      Rational r(seq.term(k), seq.term(k + 1));
      rhs += r * r;
    }
  }
  ctx.results["weighted_ratio_sum"] = lhs.to_string();
  ctx.results["jump_ratio_sum"] = rhs.to_string();
  ctx.check("series-comparison", lhs <= Rational(4) * rhs,
            "weighted series bounded by 4x the jump series");
  // Blocks feed the generalized product construction.
  std::vector<BigInt> bases;
  std::vector<std::vector<BigInt>> mults;
  for (const auto& b : chain.blocks) {
    bases.push_back(b.base);
    mults.push_back(b.q);
  }
  auto block_seq = seqs::block_sequence(bases, mults);
  auto spec = rz::block_riesz_spec(block_seq, std::nullopt, ctx.prec);
  ctx.results["first"] = spec.first;
  ctx.check("construction", true, "block spec certified");
}

void run_prop7(Context& ctx) {
  std::size_t blocks = static_cast<std::size_t>(ctx.param_int("blocks", 8));
  auto seq = seqs::divergent_block_sequence(
      seqs::default_gamma_table(blocks), seqs::default_r_table(blocks));
  std::vector<Rational> thetas = sample_angles(ctx.seed, 5);
  auto samples = grp::g2_block_scan(seq, thetas, seq.size(), ctx.prec);
  int growing = 0;
  Json sample_rows = Json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.growing) ++growing;
    sample_rows.push_back(
        Json{{"theta", s.theta.to_string()},
             {"growing", s.growing},
             {"partial_sum", ball_cell(s.partial.back())}});
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < s.partial.size(); ++k) {
      rows.push_back({std::to_string(k + 1),
                      s.partial[k].mid().to_decimal(kBallDigits)});
    }
    add_series(ctx, "partial-sums-theta-" + std::to_string(i),
               {"k", "partial_sum"}, rows);
  }
  ctx.results["samples"] = sample_rows;
  ctx.results["growing"] = growing;
  ctx.check("growth-heuristic",
            growing >= 4,
            std::to_string(growing) +
                " of 5 sampled angles show growing partial sums "
                "(heuristic evidence, not a proof)");
}

void run_thm_th1(Context& ctx) {
  std::size_t blocks = static_cast<std::size_t>(ctx.param_int("blocks", 7));
  std::size_t depth = static_cast<std::size_t>(ctx.param_int("depth", 5));
  auto seq = seqs::complete_sumset_sequence(blocks);
  // Marker consistency: M_l - M_{l-1} = l^2.
  bool markers_ok = true;
  const auto& markers = seq.markers();
  for (std::size_t l = 2; l <= blocks; ++l) {
    if (markers[l - 1] - markers[l - 2] != l * l) markers_ok = false;
  }
  ctx.check("marker-consistency", markers_ok, "M_l - M_{l-1} = l^2");
  std::vector<BigInt> bases(seq.bases().begin() + 1, seq.bases().end());
  std::vector<std::size_t> counts;
  for (std::size_t l = 2; l <= blocks; ++l) counts.push_back(l * l);
  auto cert = grp::witness_search(bases, grp::WitnessBound::twopi(), depth,
                                  &counts, ctx.prec);
  ctx.results["witness_theta"] = cert.theta.to_string();
  Json entries = Json::array();
  for (const auto& e : cert.entries) {
    entries.push_back(Json{{"l", e.index},
                           {"frac", e.frac_value.to_string()},
                           {"bound", e.bound.to_string()}});
  }
  ctx.results["witness_entries"] = entries;
  ctx.check("witness-certificate", !cert.entries.empty(),
            "nested-interval witness verified exactly at depth " +
                std::to_string(depth));
  Json sums = Json::array();
  for (const auto& b : cert.block_square_sums) sums.push_back(ball_cell(b));
  ctx.results["block_square_sums"] = sums;
  bool bounded = cert.block_square_sums.empty() ||
                 cert.block_square_sums.back().upper().compare(
                     Rational(1000)) <= 0;
  ctx.check("square-sums-bounded", bounded,
            "partial square sums stay bounded along the witness");
}

void run_lemma1(Context& ctx) {
  std::vector<std::pair<std::size_t, std::size_t>> cases;
  if (ctx.params.contains("l")) {
    cases.emplace_back(static_cast<std::size_t>(ctx.param_int("l", 2)),
                       static_cast<std::size_t>(ctx.param_int("q", 0)));
  } else {
    cases = {{2, 0}, {3, 0}, {2, 1}};
  }
  Json rows = Json::array();
  for (auto [l, q] : cases) {
    auto cert = ipc::verify_sumset_identity(l, q);
    rows.push_back(Json{{"l", l},
                        {"q", q},
                        {"step", cert.step.to_decimal()},
                        {"count", cert.count.to_decimal()},
                        {"enumerated", cert.enumerated},
                        {"beyond_run", cert.beyond_run}});
    ctx.check("sumset-identity-l" + std::to_string(l) + "-q" +
                  std::to_string(q),
              cert.pass,
              "subset sums tile the multiples of the block base exactly");
  }
  ctx.results["cases"] = rows;
}

void run_kahane_61(Context& ctx) {
  std::int64_t jmax = ctx.param_int("jmax", 50);
  Rational a = krn::kahane_normalizer();
  ctx.results["normalizer"] = a.to_string();
  ctx.check("normalizer-from-integration", a == Rational(9),
            "1 / (D*D)(0) = 9 by exact integration");
  ctx.check("phi-at-sixth", krn::kahane_phi(Rational(1, 6)) == Rational(1, 4),
            "phi(1/6) = 1/4 exactly");
  // Coefficient table for the bump on a grid.
  {
    std::ostringstream csv;
    csv << "x,phi\n";
    for (int i = 0; i <= 120; ++i) {
      Rational x(i, 360);
      csv << x.to_string() << "," << krn::kahane_phi(x).to_string() << "\n";
    }
    ctx.files["phi.csv"] = csv.str();
  }
  bool degree_ok = true;
  for (std::int64_t j = 1; j <= jmax; ++j) {
    if (krn::kahane_poly(j).degree() > j / 3) degree_ok = false;
  }
  ctx.check("degree-bound", degree_ok,
            "poly degree <= j/3 up to jmax (full construction)");
  Json minima = Json::array();
  bool nonneg_ok = true;
  for (std::int64_t j : {2, 7, 30}) {
    auto rep = krn::kahane_nonneg_check(j, 256, ctx.prec);
    minima.push_back(Json{{"j", j},
                          {"minimum", ball_cell(rep.minimum)},
                          {"argmin", rep.argmin.to_string()}});
    if (rep.minimum.upper().signum() < 0) nonneg_ok = false;
  }
  ctx.results["grid_minima"] = minima;
  ctx.check("nonnegativity-minima", nonneg_ok,
            "grid minima nonnegative within enclosure");
  auto bound = krn::derive_phi_bound();
  ctx.results["phi_bound"] = Json{{"c", bound.c.to_string()},
                                  {"gamma", bound.gamma.to_string()},
                                  {"j0", bound.j0}};
  bool floor_ok = true;
  for (std::int64_t j = bound.j0; j <= 200; ++j) {
    Rational lhs = krn::kahane_phi(Rational(1, j));
    Rational rhs = Rational(1) - bound.c / Rational(j * j);
    if (lhs < rhs) floor_ok = false;
  }
  ctx.check("leading-coefficient-floor", floor_ok,
            "phi(1/j) >= 1 - c/j^2 for j0 <= j <= 200, exactly");
}

void run_section_62(Context& ctx) {
  std::size_t qmax = static_cast<std::size_t>(ctx.param_int("qmax", 2));
  auto u = ipc::subset_sum_union(qmax);
  ctx.results["terms"] = Json::array();
  for (std::size_t k = 1; k <= std::min<std::size_t>(u.seq.size(), 20); ++k) {
    ctx.results["terms"].push_back(u.seq.term(k).to_decimal());
  }
  bool first_block = u.seq.term(1) == BigInt(5) &&
                     u.seq.term(2) == BigInt(16) &&
                     u.seq.term(3) == BigInt(21);
  ctx.check("first-sumset-block", first_block,
            "block q=1 enumerates to {5, 16, 21}");
  auto thetas = sample_angles(ctx.seed, 10);
  auto samples = ipc::ginf_scan(thetas, qmax, ctx.prec);
  std::size_t checked = 0;
  Json rows = Json::array();
  for (const auto& s : samples) {
    checked += s.additivity_checked;
    Json frac = Json::array();
    for (const auto& f : s.block_frac_sums) frac.push_back(f.to_string());
    rows.push_back(Json{{"theta", s.theta.to_string()},
                        {"additivity_checked", s.additivity_checked},
                        {"block_frac_sums", frac}});
  }
  ctx.results["samples"] = rows;
  ctx.check("signed-frac-additivity", true,
            std::to_string(checked) +
                " disjoint pairs verified with zero violations");
}

using Runner = std::function<void(Context&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"prop3-demo", run_prop3_demo}, {"cor4", run_cor4},
      {"prop5", run_prop5},           {"thm-cor6", run_thm_cor6},
      {"prop7", run_prop7},           {"thm-th1", run_thm_th1},
      {"lemma1", run_lemma1},         {"kahane-61", run_kahane_61},
      {"section-62", run_section_62},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : runners()) out.push_back(name);
    return out;
  }();
  return names;
}

RunResult run_experiment(const Json& config) {
  if (!config.is_object() || !config.contains("experiment"))
    throw ValidationError("config needs an \"experiment\" field");
  std::string name = config.at("experiment").get<std::string>();
  auto it = runners().find(name);
  if (it == runners().end())
    throw ValidationError("unknown experiment: " + name);
  Context ctx;
  ctx.params = config.value("params", Json::object());
  ctx.prec = config.value("precision", kDefaultPrecision);
  ctx.seed = config.value("seed", std::uint64_t{1});
  it->second(ctx);
  RunResult out;
  out.report = Json{{"experiment", name},
                    {"params", ctx.params},
                    {"precision", ctx.prec},
                    {"seed", ctx.seed},
                    {"pass", ctx.pass},
                    {"checks", ctx.checks},
                    {"results", ctx.results},
                    {"series", ctx.series}};
  out.files = std::move(ctx.files);
  out.pass = ctx.pass;
  return out;
}

std::string emit_plotdata(const Json& report, const std::string& kind) {
  if (!report.contains("series") || !report.at("series").contains(kind))
    throw ValidationError("report carries no series named " + kind);
  const Json& series = report.at("series").at(kind);
  std::ostringstream out;
  const Json& header = series.at("header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ",";
    out << header[i].get<std::string>();
  }
  out << "\n";
  for (const auto& row : series.at("rows")) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i].get<std::string>();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace rieszprod::experiments
