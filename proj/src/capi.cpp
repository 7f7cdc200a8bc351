#include "rieszprod.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <set>
#include <string>

#include "rieszprod/errors.hpp"
#include "rieszprod/experiments.hpp"
#include "rieszprod/groups.hpp"
#include "rieszprod/io.hpp"
#include "rieszprod/ipcheck.hpp"
#include "rieszprod/oracle.hpp"

using rieszprod::BigInt;
using rieszprod::kDefaultPrecision;
using rieszprod::Rational;
using rieszprod::RealBall;
using rieszprod::TrigCache;
using rieszprod::UnimodularPoint;
using Json = rieszprod::io::Json;
namespace io = rieszprod::io;
namespace seqs = rieszprod::sequences;
namespace rz = rieszprod::riesz;
namespace krn = rieszprod::kernels;
namespace orc = rieszprod::oracle;
namespace grp = rieszprod::groups;
namespace ipc = rieszprod::ipcheck;

struct rzp_ctx {
  int precision = kDefaultPrecision;
  std::string last_error;
};

struct rzp_seq {
  seqs::IndexedSequence value;
};

struct rzp_spec {
  rz::RieszSpec value;
};

namespace {

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(::malloc(text.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

rzp_status classify(const std::exception& e, rzp_ctx* ctx) {
  if (ctx) ctx->last_error = e.what();
  if (dynamic_cast<const rieszprod::ParseError*>(&e)) return RZP_ERROR_PARSE;
  if (dynamic_cast<const rieszprod::PrecisionError*>(&e))
    return RZP_ERROR_PRECISION;
  if (dynamic_cast<const rieszprod::GuardError*>(&e)) return RZP_ERROR_GUARD;
  if (dynamic_cast<const rieszprod::InfeasibleError*>(&e))
    return RZP_ERROR_INFEASIBLE;
  if (dynamic_cast<const rieszprod::InvariantViolation*>(&e))
    return RZP_ERROR_VIOLATION;
  if (dynamic_cast<const rieszprod::ArithmeticError*>(&e))
    return RZP_ERROR_ARITHMETIC;
  if (dynamic_cast<const rieszprod::ValidationError*>(&e))
    return RZP_ERROR_INVALID;
  if (dynamic_cast<const std::bad_alloc*>(&e)) return RZP_ERROR_NOMEM;
  return RZP_ERROR_INTERNAL;
}

template <typename Fn>
rzp_status guarded(rzp_ctx* ctx, Fn&& fn) {
  if (!ctx) return RZP_ERROR_INVALID;
  ctx->last_error.clear();
  try {
    fn();
    return RZP_OK;
  } catch (const std::exception& e) {
    return classify(e, ctx);
  } catch (...) {
    ctx->last_error = "unknown error";
    return RZP_ERROR_INTERNAL;
  }
}

Json ball_json(const RealBall& b) {
  Json j = io::ball_to_json(b);
  j["value"] = b.mid().to_decimal(30);
  j["radius"] = b.rad().to_decimal(4);
  return j;
}

// ---- op handlers ----

Json op_kernel_coeff_table(rzp_ctx* ctx, const Json& req) {
  BigInt m = BigInt::from_decimal(req.at("m").get<std::string>());
  if (m > BigInt(100000))
    throw rieszprod::GuardError("coefficient table too large");
  TrigCache cache(ctx->precision);
  Json rows = Json::array();
  std::string csv = "frequency,value,radius\n";
  for (BigInt p = -m; p <= m; p += BigInt(1)) {
    RealBall c = krn::fejer_coeff(m, p, ctx->precision, &cache);
    rows.push_back(Json{{"p", p.to_decimal()},
                        {"value", c.mid().to_decimal(30)},
                        {"radius", c.rad().to_decimal(4)}});
    csv += p.to_decimal() + "," + c.mid().to_decimal(30) + "," +
           c.rad().to_decimal(4) + "\n";
  }
  return Json{{"m", m.to_decimal()}, {"rows", rows}, {"csv", csv}};
}

Json op_kernel_eval(rzp_ctx* ctx, const Json& req) {
  BigInt m = BigInt::from_decimal(req.at("m").get<std::string>());
  Rational t = Rational::parse(req.at("t").get<std::string>());
  return ball_json(krn::fejer_eval(m, t, ctx->precision));
}

Json op_kernel_floor(rzp_ctx* ctx, const Json& req) {
  BigInt m = BigInt::from_decimal(req.at("m").get<std::string>());
  BigInt cap = BigInt::from_decimal(req.at("p_cap").get<std::string>());
  return ball_json(krn::fejer_coeff_floor(m, cap, ctx->precision));
}

Json op_kernel_phi(rzp_ctx*, const Json& req) {
  Rational x = Rational::parse(req.at("x").get<std::string>());
  return Json{{"x", x.to_string()}, {"value", krn::kahane_phi(x).to_string()}};
}

Json op_kernel_poly(rzp_ctx*, const Json& req) {
  std::int64_t j = req.at("j").get<std::int64_t>();
  krn::KahanePoly poly = krn::kahane_poly(j);
  Json coeff = Json::array();
  for (const Rational& c : poly.coeff) coeff.push_back(c.to_string());
  return Json{{"j", j}, {"degree", poly.degree()}, {"coeff", coeff}};
}

Json op_kernel_nonneg(rzp_ctx* ctx, const Json& req) {
  std::int64_t j = req.at("j").get<std::int64_t>();
  std::size_t grid = req.at("grid").get<std::size_t>();
  auto report = krn::kahane_nonneg_check(j, grid, ctx->precision);
  return Json{{"j", j},
              {"grid", report.grid},
              {"minimum", ball_json(report.minimum)},
              {"argmin", report.argmin.to_string()}};
}

Json op_kernel_phi_bound(rzp_ctx*, const Json&) {
  auto bound = krn::derive_phi_bound();
  return Json{{"c", bound.c.to_string()},
              {"gamma", bound.gamma.to_string()},
              {"j0", bound.j0}};
}

Json op_seq_ratio_series(rzp_ctx*, const Json& req) {
  auto seq = io::seq_from_json(req.at("seq"));
  int exponent = req.value("exponent", 2);
  std::size_t terms = req.value("terms", seq.size() - 1);
  std::set<std::size_t> S;
  const std::set<std::size_t>* restrict = nullptr;
  if (req.contains("S")) {
    for (const auto& k : req.at("S")) S.insert(k.get<std::size_t>());
    restrict = &S;
  }
  auto sums = seqs::ratio_series(seq, exponent, terms, restrict);
  Json rows = Json::array();
  for (std::size_t k = 0; k < sums.size(); ++k) {
    rows.push_back(Json{{"k", k + 1}, {"partial", sums[k].to_string()}});
  }
  return Json{{"exponent", exponent}, {"rows", rows}};
}

Json op_seq_divisibility(rzp_ctx*, const Json& req) {
  auto seq = io::seq_from_json(req.at("seq"));
  Json S = Json::array();
  for (std::size_t k : seqs::divisibility_profile(seq)) S.push_back(k);
  return Json{{"S", S}};
}

Json op_seq_factor_chain(rzp_ctx*, const Json& req) {
  auto seq = io::seq_from_json(req.at("seq"));
  std::set<std::size_t> S;
  if (req.contains("S")) {
    for (const auto& k : req.at("S")) S.insert(k.get<std::size_t>());
  } else {
    S = seqs::divisibility_profile(seq);
  }
  auto chain = seqs::factor_chain(seq, S);
  Json blocks = Json::array();
  for (const auto& b : chain.blocks) {
    Json s = Json::array();
    for (const BigInt& x : b.s) s.push_back(x.to_decimal());
    Json q = Json::array();
    for (const BigInt& x : b.q) q.push_back(x.to_decimal());
    blocks.push_back(Json{{"start", b.start},
                          {"end", b.end},
                          {"base", b.base.to_decimal()},
                          {"s", s},
                          {"q", q},
                          {"q_sum", b.q_sum.to_decimal()},
                          {"doubling_bound_ok", b.doubling_bound_ok}});
  }
  Json Sj = Json::array();
  for (std::size_t k : S) Sj.push_back(k);
  return Json{{"S", Sj},
              {"blocks", blocks},
              {"doubling_bound_ok", chain.doubling_bound_ok}};
}

Json op_riesz_coeffs(rzp_ctx* ctx, const Json& req) {
  rz::RieszSpec spec = io::spec_from_json(req.at("spec"));
  TrigCache cache(ctx->precision);
  Json rows = Json::array();
  std::string csv = "n,value,radius,digits\n";
  for (const auto& t : req.at("targets")) {
    BigInt n = BigInt::from_decimal(t.get<std::string>());
    RealBall c = rz::riesz_coeff(n, spec, ctx->precision, &cache);
    auto digits = rz::decompose(n, spec);
    std::string digit_text;
    Json digit_json;
    if (digits) {
      digit_json = Json::object();
      for (const auto& [k, d] : digits->digits) {
        digit_json[std::to_string(k)] = d.to_decimal();
        if (!digit_text.empty()) digit_text += " ";
        digit_text += std::to_string(k) + ":" + d.to_decimal();
      }
      if (digit_text.empty()) digit_text = "0";  // the empty representation
    } else {
      digit_json = nullptr;
      digit_text = "none";
    }
    rows.push_back(Json{{"n", n.to_decimal()},
                        {"value", c.mid().to_decimal(30)},
                        {"radius", c.rad().to_decimal(4)},
                        {"digits", digit_json}});
    csv += n.to_decimal() + "," + c.mid().to_decimal(30) + "," +
           c.rad().to_decimal(4) + "," + digit_text + "\n";
  }
  return Json{{"rows", rows}, {"csv", csv}};
}

Json op_riesz_bound(rzp_ctx* ctx, const Json& req) {
  rz::RieszSpec spec = io::spec_from_json(req.at("spec"));
  std::vector<std::size_t> F;
  for (const auto& k : req.at("F")) F.push_back(k.get<std::size_t>());
  return ball_json(rz::coeff_lower_bound(F, spec, ctx->precision));
}

Json op_oracle_expand(rzp_ctx* ctx, const Json& req) {
  rz::RieszSpec spec = io::spec_from_json(req.at("spec"));
  auto table = orc::expand_product(spec, 2 * ctx->precision);
  return Json{{"size", table.table.size()},
              {"bandwidth", table.bandwidth.to_decimal()},
              {"csv", io::spectrum_to_csv(table)}};
}

Json op_oracle_expand_kahane(rzp_ctx* ctx, const Json& req) {
  orc::KahanePlan plan{io::seq_from_json(req.at("seq")),
                       req.at("j_first").get<std::int64_t>(),
                       req.at("j_last").get<std::int64_t>()};
  auto table = orc::expand_product(plan, 2 * ctx->precision);
  return Json{{"size", table.table.size()},
              {"bandwidth", table.bandwidth.to_decimal()},
              {"csv", io::spectrum_to_csv(table)}};
}

Json op_oracle_quadrature(rzp_ctx* ctx, const Json& req) {
  BigInt n = BigInt::from_decimal(req.at("n").get<std::string>());
  int prec = 2 * ctx->precision;
  if (req.contains("m")) {
    BigInt m = BigInt::from_decimal(req.at("m").get<std::string>());
    BigInt nodes = req.contains("nodes")
                       ? BigInt::from_decimal(req.at("nodes").get<std::string>())
                       : m + m + BigInt(1);
    TrigCache cache(prec);
    orc::Evaluator eval = [&](const Rational& t) {
      return krn::fejer_eval(m, t, prec, &cache);
    };
    return ball_json(orc::quadrature_coeff(eval, m, n, nodes, prec, &cache));
  }
  orc::SparseSpectrum table;
  if (req.contains("spec")) {
    table = orc::expand_product(io::spec_from_json(req.at("spec")), prec);
  } else {
    table = io::spectrum_from_csv(req.at("csv").get<std::string>(), prec);
  }
  BigInt nodes = req.contains("nodes")
                     ? BigInt::from_decimal(req.at("nodes").get<std::string>())
                     : table.bandwidth + table.bandwidth + BigInt(1);
  return ball_json(orc::quadrature_coeff(table, n, nodes, prec));
}

Json op_oracle_compare(rzp_ctx* ctx, const Json& req) {
  int prec = 2 * ctx->precision;
  auto a = io::spectrum_from_csv(req.at("a_csv").get<std::string>(), prec);
  auto b = io::spectrum_from_csv(req.at("b_csv").get<std::string>(), prec);
  Rational tol = Rational::parse(req.value("tol", std::string("0")));
  auto report = orc::compare(a, b, tol);
  return Json{{"pass", report.pass},
              {"compared", report.compared},
              {"max_discrepancy", report.max_discrepancy.to_decimal(6)},
              {"worst_key", report.worst_key.to_decimal()}};
}

Json op_group_scan(rzp_ctx* ctx, const Json& req) {
  auto seq = io::seq_from_json(req.at("seq"));
  Rational theta = Rational::parse(req.at("theta").get<std::string>());
  int p = req.value("p", 2);
  std::size_t terms = req.value("terms", seq.size());
  auto scan = grp::gp_partial_sums(UnimodularPoint(theta), seq, p, terms,
                                   ctx->precision);
  Json values = Json::array();
  Json series_rows = Json::array();
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    values.push_back(ball_json(scan.values[k]));
    Json row = Json::array();
    row.push_back(std::to_string(k + 1));
    row.push_back(scan.values[k].mid().to_decimal(30));
    series_rows.push_back(row);
  }
  Json header = Json::array();
  header.push_back("k");
  header.push_back(p == 0 ? "value" : "partial_sum");
  return Json{{"theta", theta.to_string()},
              {"p", p},
              {"terms", terms},
              {"values", values},
              {"series",
               Json{{"partial-sums", Json{{"header", header},
                                          {"rows", series_rows}}}}}};
}

Json op_group_witness(rzp_ctx* ctx, const Json& req) {
  std::vector<BigInt> bases;
  if (req.contains("bases")) {
    for (const auto& b : req.at("bases"))
      bases.push_back(BigInt::from_decimal(b.get<std::string>()));
  } else {
    auto seq = io::seq_from_json(req.at("seq"));
    if (seq.bases().empty())
      throw rieszprod::ValidationError(
          "sequence carries no base values for a witness search");
    // Skip leading repeats (base families may start 1, 1, ...).
    for (const BigInt& b : seq.bases()) {
      if (bases.empty() || b > bases.back()) bases.push_back(b);
    }
  }
  std::string c_text = req.value("C", std::string("2pi"));
  grp::WitnessBound C = (c_text == "2pi")
                            ? grp::WitnessBound::twopi()
                            : grp::WitnessBound::from_rational(
                                  Rational::parse(c_text));
  std::size_t depth = req.value("depth", std::size_t{5});
  std::vector<std::size_t> counts;
  const std::vector<std::size_t>* counts_ptr = nullptr;
  if (req.contains("block_counts")) {
    for (const auto& c : req.at("block_counts"))
      counts.push_back(c.get<std::size_t>());
    counts_ptr = &counts;
  }
  auto cert = grp::witness_search(bases, C, depth, counts_ptr,
                                  ctx->precision);
  Json entries = Json::array();
  for (const auto& e : cert.entries) {
    entries.push_back(Json{{"l", e.index},
                           {"frac", e.frac_value.to_string()},
                           {"bound", e.bound.to_string()}});
  }
  Json sums = Json::array();
  for (const auto& s : cert.block_square_sums) sums.push_back(ball_json(s));
  return Json{{"theta", cert.theta.to_string()},
              {"C", C.describe()},
              {"entries", entries},
              {"block_square_sums", sums}};
}

Json op_group_et_check(rzp_ctx* ctx, const Json& req) {
  Rational theta = Rational::parse(req.at("theta").get<std::string>());
  std::size_t terms = req.value("terms", std::size_t{30});
  auto report = grp::et_divergence_check(theta, terms, ctx->precision);
  Json branch = Json::array();
  for (int b : report.branch) branch.push_back(b);
  return Json{{"theta", report.theta.to_string()},
              {"terms", report.horizon},
              {"branch", branch},
              {"p1_partial_final", ball_json(report.p1_partial.back())}};
}

Json op_group_block_scan(rzp_ctx* ctx, const Json& req) {
  auto seq = io::seq_from_json(req.at("seq"));
  std::vector<Rational> thetas;
  for (const auto& t : req.at("thetas"))
    thetas.push_back(Rational::parse(t.get<std::string>()));
  std::size_t terms = req.value("terms", seq.size());
  auto samples = grp::g2_block_scan(seq, thetas, terms, ctx->precision);
  Json rows = Json::array();
  for (const auto& s : samples) {
    Json quantities = Json::array();
    for (const auto& q : s.block_quantities)
      quantities.push_back(q.to_string());
    rows.push_back(Json{{"theta", s.theta.to_string()},
                        {"growing", s.growing},
                        {"final_partial", ball_json(s.partial.back())},
                        {"block_quantities", quantities}});
  }
  return Json{{"samples", rows}};
}

Json op_ip_window(rzp_ctx* ctx, const Json& req) {
  std::size_t k0 = req.at("k0").get<std::size_t>();
  std::size_t width = req.at("width").get<std::size_t>();
  int prec = ctx->precision;
  if (req.contains("atoms")) {
    auto mu = io::atoms_from_json(req.at("atoms"));
    auto seq = io::seq_from_json(req.at("seq"));
    auto report = ipc::atomic_ip_check(mu, seq, k0, width, prec);
    Json products = Json::array();
    for (const auto& p : report.atom_products) products.push_back(ball_json(p));
    Json sq = Json::array();
    for (const auto& s : report.atom_square_sums) sq.push_back(ball_json(s));
    Json subset = Json::array();
    for (std::size_t k : report.window.worst_subset) subset.push_back(k);
    return Json{{"source", "atomic"},
                {"k0", k0},
                {"width", width},
                {"deviation", ball_json(report.window.worst_deviation)},
                {"worst_subset", subset},
                {"atom_products", products},
                {"atom_square_sums", sq}};
  }
  ipc::CoeffSource source;
  seqs::IndexedSequence seq = io::seq_from_json(req.at("seq"));
  std::string tag;
  std::optional<rz::RieszSpec> spec;
  auto cache = std::make_shared<TrigCache>(prec);
  std::shared_ptr<orc::SparseSpectrum> table;
  if (req.contains("spec")) {
    spec = io::spec_from_json(req.at("spec"));
    tag = "riesz-spec";
    source = [spec, prec, cache](const BigInt& n) {
      return rz::riesz_coeff(n, *spec, prec, cache.get());
    };
  } else if (req.contains("table_csv")) {
    table = std::make_shared<orc::SparseSpectrum>(
        io::spectrum_from_csv(req.at("table_csv").get<std::string>(), prec));
    tag = "custom-table";
    source = [table, prec](const BigInt& n) {
      const RealBall* hit = table->find(n);
      return hit ? *hit : RealBall::exact(rieszprod::Dyadic(), prec);
    };
  } else {
    throw rieszprod::ValidationError(
        "ip.window needs one of: spec, atoms, table_csv");
  }
  auto report = ipc::ip_window_deviation(source, tag, seq, k0, width, prec,
                                         spec ? &*spec : nullptr);
  Json subset = Json::array();
  for (std::size_t k : report.worst_subset) subset.push_back(k);
  Json out{{"source", tag},
           {"k0", k0},
           {"width", width},
           {"deviation", ball_json(report.worst_deviation)},
           {"worst_subset", subset}};
  if (report.predicted_deviation)
    out["predicted"] = ball_json(*report.predicted_deviation);
  return out;
}

Json op_ip_subset_sums(rzp_ctx*, const Json& req) {
  auto seq = io::seq_from_json(req.at("seq"));
  std::size_t lo = req.at("lo").get<std::size_t>();
  std::size_t hi = req.at("hi").get<std::size_t>();
  Json sums = Json::array();
  for (const BigInt& s : ipc::subset_sums(seq, lo, hi))
    sums.push_back(s.to_decimal());
  return Json{{"sums", sums}};
}

Json op_ip_sumset_identity(rzp_ctx*, const Json& req) {
  std::size_t l = req.at("l").get<std::size_t>();
  std::size_t q = req.at("q").get<std::size_t>();
  auto cert = ipc::verify_sumset_identity(l, q);
  return Json{{"l", cert.l},
              {"q", cert.q},
              {"pass", cert.pass},
              {"step", cert.step.to_decimal()},
              {"count", cert.count.to_decimal()},
              {"enumerated", cert.enumerated},
              {"beyond_run", cert.beyond_run}};
}

Json op_ip_sumset_union(rzp_ctx*, const Json& req) {
  std::size_t qmax = req.at("qmax").get<std::size_t>();
  auto u = ipc::subset_sum_union(qmax);
  Json ranges = Json::array();
  for (const auto& [lo, hi] : u.block_ranges)
    ranges.push_back(Json{{"start", lo}, {"end", hi}});
  return Json{{"seq", io::seq_to_json(u.seq)}, {"block_ranges", ranges}};
}

Json op_ip_ginf_scan(rzp_ctx* ctx, const Json& req) {
  std::size_t qmax = req.value("qmax", std::size_t{2});
  std::vector<Rational> thetas;
  for (const auto& t : req.at("thetas"))
    thetas.push_back(Rational::parse(t.get<std::string>()));
  auto samples = ipc::ginf_scan(thetas, qmax, ctx->precision);
  Json rows = Json::array();
  for (const auto& s : samples) {
    Json maxima = Json::array();
    for (const auto& m : s.block_max) maxima.push_back(ball_json(m));
    Json frac = Json::array();
    for (const auto& f : s.block_frac_sums) frac.push_back(f.to_string());
    rows.push_back(Json{{"theta", s.theta.to_string()},
                        {"additivity_checked", s.additivity_checked},
                        {"block_max", maxima},
                        {"block_frac_sums", frac}});
  }
  return Json{{"qmax", qmax}, {"samples", rows}};
}

Json op_experiment_list(rzp_ctx*, const Json&) {
  Json names = Json::array();
  for (const auto& n : rieszprod::experiments::experiment_names())
    names.push_back(n);
  return Json{{"experiments", names}};
}

Json op_experiment_run(rzp_ctx* ctx, const Json& req) {
  Json config = req;
  if (!config.contains("precision")) config["precision"] = ctx->precision;
  auto result = rieszprod::experiments::run_experiment(config);
  Json files = Json::object();
  for (const auto& [name, text] : result.files) files[name] = text;
  return Json{{"pass", result.pass},
              {"report", result.report},
              {"files", files}};
}

Json op_plotdata(rzp_ctx*, const Json& req) {
  std::string csv = rieszprod::experiments::emit_plotdata(
      req.at("report"), req.at("kind").get<std::string>());
  return Json{{"csv", csv}};
}

Json dispatch(rzp_ctx* ctx, const std::string& op, const Json& req) {
  using Handler = Json (*)(rzp_ctx*, const Json&);
  static const std::map<std::string, Handler> table = {
      {"kernel.coeff_table", op_kernel_coeff_table},
      {"kernel.eval", op_kernel_eval},
      {"kernel.floor", op_kernel_floor},
      {"kernel.phi", op_kernel_phi},
      {"kernel.poly", op_kernel_poly},
      {"kernel.nonneg", op_kernel_nonneg},
      {"kernel.phi_bound", op_kernel_phi_bound},
      {"seq.ratio_series", op_seq_ratio_series},
      {"seq.divisibility", op_seq_divisibility},
      {"seq.factor_chain", op_seq_factor_chain},
      {"riesz.coeffs", op_riesz_coeffs},
      {"riesz.bound", op_riesz_bound},
      {"oracle.expand", op_oracle_expand},
      {"oracle.expand_kahane", op_oracle_expand_kahane},
      {"oracle.quadrature", op_oracle_quadrature},
      {"oracle.compare", op_oracle_compare},
      {"group.scan", op_group_scan},
      {"group.witness", op_group_witness},
      {"group.et_check", op_group_et_check},
      {"group.block_scan", op_group_block_scan},
      {"ip.window", op_ip_window},
      {"ip.subset_sums", op_ip_subset_sums},
      {"ip.sumset_identity", op_ip_sumset_identity},
      {"ip.sumset_union", op_ip_sumset_union},
      {"ip.ginf_scan", op_ip_ginf_scan},
      {"experiment.list", op_experiment_list},
      {"experiment.run", op_experiment_run},
      {"plotdata", op_plotdata},
  };
  auto it = table.find(op);
  if (it == table.end())
    throw rieszprod::ValidationError("unknown op: " + op);
  return it->second(ctx, req);
}

}  // namespace

extern "C" {

const char* rzp_version(void) { return "0.1.0"; }

rzp_ctx* rzp_ctx_new(int precision_bits) {
  rzp_ctx* ctx = new (std::nothrow) rzp_ctx;
  if (!ctx) return nullptr;
  if (precision_bits > 0) ctx->precision = precision_bits;
  return ctx;
}

void rzp_ctx_free(rzp_ctx* ctx) { delete ctx; }

int rzp_ctx_precision(const rzp_ctx* ctx) {
  return ctx ? ctx->precision : kDefaultPrecision;
}

const char* rzp_last_error(const rzp_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

void rzp_string_free(char* text) { ::free(text); }

rzp_status rzp_seq_generate(rzp_ctx* ctx, const char* family,
                            const char* params_json, size_t count,
                            rzp_seq** out) {
  if (!out || !family) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    Json params = params_json && *params_json ? io::parse_json(params_json)
                                              : Json::object();
    auto seq = io::generate_sequence(family, params, count);
    *out = new rzp_seq{std::move(seq)};
  });
}

rzp_status rzp_seq_from_json(rzp_ctx* ctx, const char* json_text,
                             rzp_seq** out) {
  if (!out || !json_text) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    *out = new rzp_seq{io::seq_from_json(io::parse_json(json_text))};
  });
}

rzp_status rzp_seq_to_json(rzp_ctx* ctx, const rzp_seq* seq, char** out_json) {
  if (!seq || !out_json) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    *out_json = copy_string(io::dump_json(io::seq_to_json(seq->value)));
    if (!*out_json) throw std::bad_alloc();
  });
}

size_t rzp_seq_size(const rzp_seq* seq) {
  return seq ? seq->value.size() : 0;
}

rzp_status rzp_seq_term(rzp_ctx* ctx, const rzp_seq* seq, size_t index,
                        char** out_decimal) {
  if (!seq || !out_decimal) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    *out_decimal = copy_string(seq->value.term(index).to_decimal());
    if (!*out_decimal) throw std::bad_alloc();
  });
}

void rzp_seq_free(rzp_seq* seq) { delete seq; }

rzp_status rzp_spec_choose_m(rzp_ctx* ctx, const rzp_seq* seq,
                             const char* min_tail_product, rzp_spec** out) {
  if (!seq || !out) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    std::optional<Rational> budget;
    if (min_tail_product && *min_tail_product)
      budget = Rational::parse(min_tail_product);
    *out = new rzp_spec{
        rz::choose_m_sequence(seq->value, budget, ctx->precision)};
  });
}

rzp_status rzp_spec_block(rzp_ctx* ctx, const rzp_seq* seq,
                          const char* min_tail_product, rzp_spec** out) {
  if (!seq || !out) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    std::optional<Rational> budget;
    if (min_tail_product && *min_tail_product)
      budget = Rational::parse(min_tail_product);
    *out =
        new rzp_spec{rz::block_riesz_spec(seq->value, budget, ctx->precision)};
  });
}

rzp_status rzp_spec_from_json(rzp_ctx* ctx, const char* json_text,
                              rzp_spec** out) {
  if (!out || !json_text) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    *out = new rzp_spec{io::spec_from_json(io::parse_json(json_text))};
  });
}

rzp_status rzp_spec_to_json(rzp_ctx* ctx, const rzp_spec* spec,
                            char** out_json) {
  if (!spec || !out_json) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    *out_json = copy_string(io::dump_json(io::spec_to_json(spec->value)));
    if (!*out_json) throw std::bad_alloc();
  });
}

rzp_status rzp_spec_certify(rzp_ctx* ctx, const rzp_spec* spec,
                            char** out_json) {
  if (!spec || !out_json) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    auto cert = rz::check_dissociation(spec->value);
    Json gaps = Json::array();
    for (const BigInt& g : cert.gap_lengths) gaps.push_back(g.to_decimal());
    Json j{{"first", cert.first},
           {"last", cert.last},
           {"gap_lengths", gaps},
           {"lengths_increasing", cert.lengths_increasing}};
    *out_json = copy_string(io::dump_json(j));
    if (!*out_json) throw std::bad_alloc();
  });
}

rzp_status rzp_spec_coeff(rzp_ctx* ctx, const rzp_spec* spec,
                          const char* n_decimal, char** out_json) {
  if (!spec || !n_decimal || !out_json) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    BigInt n = BigInt::from_decimal(n_decimal);
    RealBall c = rz::riesz_coeff(n, spec->value, ctx->precision);
    auto digits = rz::decompose(n, spec->value);
    Json dj;
    if (digits) {
      dj = Json::object();
      for (const auto& [k, d] : digits->digits)
        dj[std::to_string(k)] = d.to_decimal();
    } else {
      dj = nullptr;
    }
    Json j = ball_json(c);
    j["n"] = n.to_decimal();
    j["digits"] = dj;
    *out_json = copy_string(io::dump_json(j));
    if (!*out_json) throw std::bad_alloc();
  });
}

void rzp_spec_free(rzp_spec* spec) { delete spec; }

rzp_status rzp_run(rzp_ctx* ctx, const char* op, const char* request_json,
                   char** out_json) {
  if (!op || !out_json) return RZP_ERROR_INVALID;
  return guarded(ctx, [&] {
    Json req = request_json && *request_json ? io::parse_json(request_json)
                                             : Json::object();
    Json reply = dispatch(ctx, op, req);
    *out_json = copy_string(io::dump_json(reply));
    if (!*out_json) throw std::bad_alloc();
  });
}

}  // extern "C"
