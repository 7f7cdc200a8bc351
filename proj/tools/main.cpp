// Command-line front end. Links the C API only: every computation goes
// through the rieszprod shared library; this file parses arguments, builds
// request JSON, and writes the replies to disk.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rieszprod.h"

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Global {
  int precision = 0;  // 0 -> library default
  std::string out_dir = ".";
  long long seed = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "."
                                                    : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

class Api {
 public:
  explicit Api(const Global& g) : ctx_(rzp_ctx_new(g.precision)) {
    if (!ctx_) throw std::runtime_error("context allocation failed");
  }
  ~Api() { rzp_ctx_free(ctx_); }
  Api(const Api&) = delete;
  Api& operator=(const Api&) = delete;

  Json run(const std::string& op, const Json& request) {
    char* reply = nullptr;
    rzp_status status = rzp_run(ctx_, op.c_str(), request.dump().c_str(),
                                &reply);
    if (status != RZP_OK) {
      throw std::runtime_error(std::string(rzp_last_error(ctx_)) +
                               " (status " + std::to_string(status) + ")");
    }
    Json out = Json::parse(reply);
    rzp_string_free(reply);
    return out;
  }

  rzp_ctx* raw() { return ctx_; }

 private:
  rzp_ctx* ctx_;
};

Json load_json_file(const std::string& path) {
  return Json::parse(read_file(path));
}

void emit(const Global& g, const std::string& name,
          const std::string& content) {
  fs::path path = fs::path(g.out_dir) / name;
  write_file(path, content);
  std::cout << "wrote " << path.string() << "\n";
}

void emit_report(const Global& g, const Json& report) {
  emit(g, "report.json", report.dump(2) + "\n");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"generalized product and subgroup diagnostics"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--precision", g.precision, "working precision in bits");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--seed", g.seed, "seed for sampled angles");

  // ---- seq ----
  auto* seq = app.add_subcommand("seq", "integer sequence generators");
  auto* seq_gen = seq->add_subcommand("gen", "generate a sequence");
  std::string family = "erdos-taylor", params = "{}";
  std::size_t count = 10;
  std::string out_name = "seq.json";
  seq_gen->add_option("--family", family, "sequence family")->required();
  seq_gen->add_option("--params", params, "family parameters (JSON)");
  seq_gen->add_option("--count", count, "term or block count");
  seq_gen->add_option("--file", out_name, "output file name");
  seq_gen->callback([&] {
    Api api(g);
    rzp_seq* handle = nullptr;
    if (rzp_seq_generate(api.raw(), family.c_str(), params.c_str(), count,
                         &handle) != RZP_OK)
      throw std::runtime_error(rzp_last_error(api.raw()));
    char* text = nullptr;
    rzp_seq_to_json(api.raw(), handle, &text);
    emit(g, out_name, text);
    rzp_string_free(text);
    rzp_seq_free(handle);
  });
  auto* seq_ratio = seq->add_subcommand("ratio", "square-ratio partial sums");
  std::string seq_file;
  int exponent = 2;
  std::size_t terms = 0;
  seq_ratio->add_option("--seq", seq_file, "sequence JSON file")->required();
  seq_ratio->add_option("--p", exponent, "exponent (1 or 2)");
  seq_ratio->add_option("--terms", terms, "horizon");
  seq_ratio->callback([&] {
    Api api(g);
    Json req{{"seq", load_json_file(seq_file)}, {"exponent", exponent}};
    if (terms) req["terms"] = terms;
    emit_report(g, api.run("seq.ratio_series", req));
  });
  auto* seq_div = seq->add_subcommand("divisibility", "non-dividing steps");
  seq_div->add_option("--seq", seq_file, "sequence JSON file")->required();
  seq_div->callback([&] {
    Api api(g);
    emit_report(g, api.run("seq.divisibility",
                           Json{{"seq", load_json_file(seq_file)}}));
  });
  auto* seq_chain = seq->add_subcommand("factor-chain",
                                        "factor through division steps");
  seq_chain->add_option("--seq", seq_file, "sequence JSON file")->required();
  seq_chain->callback([&] {
    Api api(g);
    emit_report(g, api.run("seq.factor_chain",
                           Json{{"seq", load_json_file(seq_file)}}));
  });

  // ---- riesz ----
  auto* riesz = app.add_subcommand("riesz", "generalized product specs");
  auto* rz_choose = riesz->add_subcommand("choose-m", "build kernel orders");
  std::string budget, spec_file = "spec.json";
  bool block_mode = false;
  rz_choose->add_option("--seq", seq_file, "sequence JSON file")->required();
  rz_choose->add_option("--budget", budget, "min tail cosine product (a/b)");
  rz_choose->add_flag("--blocks", block_mode, "block construction with caps");
  rz_choose->add_option("--file", spec_file, "output spec file name");
  rz_choose->callback([&] {
    Api api(g);
    rzp_seq* handle = nullptr;
    if (rzp_seq_from_json(api.raw(), read_file(seq_file).c_str(), &handle) !=
        RZP_OK)
      throw std::runtime_error(rzp_last_error(api.raw()));
    rzp_spec* spec = nullptr;
    rzp_status status =
        block_mode
            ? rzp_spec_block(api.raw(), handle,
                             budget.empty() ? nullptr : budget.c_str(), &spec)
            : rzp_spec_choose_m(api.raw(), handle,
                                budget.empty() ? nullptr : budget.c_str(),
                                &spec);
    rzp_seq_free(handle);
    if (status != RZP_OK)
      throw std::runtime_error(rzp_last_error(api.raw()));
    char* text = nullptr;
    rzp_spec_to_json(api.raw(), spec, &text);
    emit(g, spec_file, text);
    rzp_string_free(text);
    rzp_spec_free(spec);
  });
  auto* rz_certify = riesz->add_subcommand("certify", "gap certificate");
  rz_certify->add_option("--spec", spec_file, "spec JSON file")->required();
  rz_certify->callback([&] {
    Api api(g);
    rzp_spec* spec = nullptr;
    if (rzp_spec_from_json(api.raw(), read_file(spec_file).c_str(), &spec) !=
        RZP_OK)
      throw std::runtime_error(rzp_last_error(api.raw()));
    char* text = nullptr;
    rzp_status status = rzp_spec_certify(api.raw(), spec, &text);
    rzp_spec_free(spec);
    if (status != RZP_OK)
      throw std::runtime_error(rzp_last_error(api.raw()));
    emit(g, "certificate.json", text);
    rzp_string_free(text);
  });
  auto* rz_coeff = riesz->add_subcommand("coeff", "coefficients at targets");
  std::string targets_file, csv_out = "coeffs.csv";
  rz_coeff->add_option("--spec", spec_file, "spec JSON file")->required();
  rz_coeff->add_option("--targets", targets_file,
                       "targets JSON file (array of decimals)")
      ->required();
  rz_coeff->add_option("--csv", csv_out, "coefficient CSV file name");
  rz_coeff->callback([&] {
    Api api(g);
    Json reply = api.run("riesz.coeffs",
                         Json{{"spec", load_json_file(spec_file)},
                              {"targets", load_json_file(targets_file)}});
    emit(g, csv_out, reply.at("csv").get<std::string>());
    reply.erase("csv");
    emit_report(g, reply);
  });
  auto* rz_bound = riesz->add_subcommand("bound", "certified floor over F");
  std::string f_indices;
  rz_bound->add_option("--spec", spec_file, "spec JSON file")->required();
  rz_bound->add_option("--F", f_indices, "indices, comma-separated")
      ->required();
  rz_bound->callback([&] {
    Api api(g);
    Json F = Json::array();
    std::stringstream ss(f_indices);
    for (std::string part; std::getline(ss, part, ',');)
      F.push_back(std::stoull(part));
    emit_report(g, api.run("riesz.bound",
                           Json{{"spec", load_json_file(spec_file)},
                                {"F", F}}));
  });

  // ---- kernel ----
  auto* kernel = app.add_subcommand("kernel", "kernel families");
  auto* k_table = kernel->add_subcommand("table", "coefficient table");
  std::string m_text = "8";
  k_table->add_option("--m", m_text, "kernel order")->required();
  k_table->add_option("--csv", csv_out, "CSV file name");
  k_table->callback([&] {
    Api api(g);
    Json reply = api.run("kernel.coeff_table", Json{{"m", m_text}});
    emit(g, csv_out, reply.at("csv").get<std::string>());
  });
  auto* k_phi = kernel->add_subcommand("phi", "bump values");
  std::string x_text = "1/6";
  k_phi->add_option("--x", x_text, "rational argument")->required();
  k_phi->callback([&] {
    Api api(g);
    emit_report(g, api.run("kernel.phi", Json{{"x", x_text}}));
  });
  auto* k_nonneg = kernel->add_subcommand("nonneg", "grid nonnegativity");
  std::int64_t j_index = 7;
  std::size_t grid = 64;
  k_nonneg->add_option("--j", j_index, "polynomial index")->required();
  k_nonneg->add_option("--grid", grid, "grid points (>= 4j)");
  k_nonneg->callback([&] {
    Api api(g);
    emit_report(g, api.run("kernel.nonneg",
                           Json{{"j", j_index}, {"grid", grid}}));
  });
  auto* k_bound = kernel->add_subcommand("phi-bound",
                                         "quadratic floor certificate");
  k_bound->callback([&] {
    Api api(g);
    emit_report(g, api.run("kernel.phi_bound", Json::object()));
  });

  // ---- group ----
  auto* group = app.add_subcommand("group", "subgroup diagnostics");
  auto* g_scan = group->add_subcommand("scan", "partial sums");
  std::string theta = "1/2";
  int p_exp = 2;
  g_scan->add_option("--theta", theta, "angle a/q")->required();
  g_scan->add_option("--seq", seq_file, "sequence JSON file")->required();
  g_scan->add_option("--p", p_exp, "exponent (1, 2, or 0 for sup)");
  g_scan->add_option("--terms", terms, "horizon");
  g_scan->callback([&] {
    Api api(g);
    Json req{{"theta", theta},
             {"seq", load_json_file(seq_file)},
             {"p", p_exp}};
    if (terms) req["terms"] = terms;
    emit_report(g, api.run("group.scan", req));
  });
  auto* g_witness = group->add_subcommand("witness", "nested-interval search");
  std::string c_text = "2pi", cert_out = "cert.json";
  std::size_t depth = 5;
  g_witness->add_option("--seq", seq_file, "sequence JSON file (with bases)")
      ->required();
  g_witness->add_option("--C", c_text, "bound constant (a/b or 2pi)");
  g_witness->add_option("--depth", depth, "refinement depth");
  g_witness->add_option("--file", cert_out, "certificate file name");
  g_witness->callback([&] {
    Api api(g);
    Json reply = api.run("group.witness",
                         Json{{"seq", load_json_file(seq_file)},
                              {"C", c_text},
                              {"depth", depth}});
    emit(g, cert_out, reply.dump(2) + "\n");
  });
  auto* g_et = group->add_subcommand("et-check", "divergence disjunction");
  g_et->add_option("--theta", theta, "angle a/q")->required();
  g_et->add_option("--terms", terms, "horizon")->required();
  g_et->callback([&] {
    Api api(g);
    emit_report(g, api.run("group.et_check",
                           Json{{"theta", theta}, {"terms", terms}}));
  });
  auto* g_block = group->add_subcommand("block-scan", "per-block scans");
  std::string thetas_text;
  g_block->add_option("--seq", seq_file, "sequence JSON file")->required();
  g_block->add_option("--thetas", thetas_text, "angles, comma-separated")
      ->required();
  g_block->add_option("--terms", terms, "horizon");
  g_block->callback([&] {
    Api api(g);
    Json thetas = Json::array();
    std::stringstream ss(thetas_text);
    for (std::string part; std::getline(ss, part, ',');)
      thetas.push_back(part);
    Json req{{"seq", load_json_file(seq_file)}, {"thetas", thetas}};
    if (terms) req["terms"] = terms;
    emit_report(g, api.run("group.block_scan", req));
  });

  // ---- ip ----
  auto* ip = app.add_subcommand("ip", "finite-window deviation checks");
  auto* ip_check = ip->add_subcommand("check", "window deviation");
  std::string source_file;
  std::size_t k0 = 1, width = 4;
  ip_check->add_option("--source", source_file,
                       "spec.json | atoms.json | table.csv")
      ->required();
  ip_check->add_option("--seq", seq_file, "sequence JSON file")->required();
  ip_check->add_option("--k0", k0, "window start index");
  ip_check->add_option("--width", width, "window width");
  ip_check->callback([&] {
    Api api(g);
    Json req{{"seq", load_json_file(seq_file)}, {"k0", k0}, {"width", width}};
    if (source_file.size() > 4 &&
        source_file.substr(source_file.size() - 4) == ".csv") {
      req["table_csv"] = read_file(source_file);
    } else {
      Json src = load_json_file(source_file);
      if (src.contains("atoms")) {
        req["atoms"] = src;
      } else {
        req["spec"] = src;
      }
    }
    emit_report(g, api.run("ip.window", req));
  });
  auto* ip_sums = ip->add_subcommand("sums", "subset sums of a range");
  std::size_t lo = 1, hi = 4;
  ip_sums->add_option("--seq", seq_file, "sequence JSON file")->required();
  ip_sums->add_option("--lo", lo, "first index");
  ip_sums->add_option("--hi", hi, "last index");
  ip_sums->callback([&] {
    Api api(g);
    emit_report(g, api.run("ip.subset_sums",
                           Json{{"seq", load_json_file(seq_file)},
                                {"lo", lo},
                                {"hi", hi}}));
  });
  auto* ip_lemma = ip->add_subcommand("sumset-identity",
                                      "block sumset closed form");
  std::size_t l_arg = 2, q_arg = 0;
  ip_lemma->add_option("--l", l_arg, "block index (>= 2)");
  ip_lemma->add_option("--q", q_arg, "extra blocks");
  ip_lemma->callback([&] {
    Api api(g);
    emit_report(g, api.run("ip.sumset_identity",
                           Json{{"l", l_arg}, {"q", q_arg}}));
  });
  auto* ip_union = ip->add_subcommand("sumset-union",
                                      "per-block subset sum union");
  std::size_t qmax = 2;
  std::string union_out = "union.json";
  ip_union->add_option("--qmax", qmax, "block count (<= 3)");
  ip_union->add_option("--file", union_out, "sequence output file name");
  ip_union->callback([&] {
    Api api(g);
    Json reply = api.run("ip.sumset_union", Json{{"qmax", qmax}});
    emit(g, union_out, reply.at("seq").dump(2) + "\n");
    reply.erase("seq");
    emit_report(g, reply);
  });
  auto* ip_ginf = ip->add_subcommand("ginf-scan",
                                     "signed-fraction additivity scan");
  ip_ginf->add_option("--thetas", thetas_text, "angles, comma-separated")
      ->required();
  ip_ginf->add_option("--qmax", qmax, "block count (<= 3)");
  ip_ginf->callback([&] {
    Api api(g);
    Json thetas = Json::array();
    std::stringstream ss(thetas_text);
    for (std::string part; std::getline(ss, part, ',');)
      thetas.push_back(part);
    emit_report(g, api.run("ip.ginf_scan",
                           Json{{"thetas", thetas}, {"qmax", qmax}}));
  });

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "brute-force validators");
  auto* o_expand = oracle->add_subcommand("expand", "literal expansion");
  o_expand->add_option("--spec", spec_file, "spec JSON file")->required();
  o_expand->add_option("--csv", csv_out, "CSV file name");
  o_expand->callback([&] {
    Api api(g);
    Json reply =
        api.run("oracle.expand", Json{{"spec", load_json_file(spec_file)}});
    emit(g, csv_out, reply.at("csv").get<std::string>());
    reply.erase("csv");
    emit_report(g, reply);
  });
  auto* o_quad = oracle->add_subcommand("quadrature", "trapezoidal check");
  std::string n_text = "0", nodes_text;
  auto* quad_spec = o_quad->add_option("--spec", spec_file, "spec JSON file");
  auto* quad_m = o_quad->add_option("--m", m_text,
                                    "kernel order (direct evaluator)");
  quad_spec->excludes(quad_m);
  o_quad->add_option("--n", n_text, "frequency")->required();
  o_quad->add_option("--nodes", nodes_text, "node count");
  o_quad->callback([&] {
    Api api(g);
    Json req{{"n", n_text}};
    if (quad_spec->count()) {
      req["spec"] = load_json_file(spec_file);
    } else if (quad_m->count()) {
      req["m"] = m_text;
    } else {
      throw std::runtime_error("quadrature needs --spec or --m");
    }
    if (!nodes_text.empty()) req["nodes"] = nodes_text;
    emit_report(g, api.run("oracle.quadrature", req));
  });
  auto* o_cmp = oracle->add_subcommand("compare", "coefficient table diff");
  std::string a_file, b_file, tol = "0";
  o_cmp->add_option("--a", a_file, "first CSV")->required();
  o_cmp->add_option("--b", b_file, "second CSV")->required();
  o_cmp->add_option("--tol", tol, "tolerance (rational)");
  o_cmp->callback([&] {
    Api api(g);
    emit_report(g, api.run("oracle.compare",
                           Json{{"a_csv", read_file(a_file)},
                                {"b_csv", read_file(b_file)},
                                {"tol", tol}}));
  });

  // ---- run / plotdata ----
  auto* run = app.add_subcommand("run", "named experiments");
  std::string experiment;
  std::string run_params = "{}";
  run->add_option("experiment", experiment,
                  "one of: prop3-demo, cor4, prop5, thm-cor6, prop7, "
                  "thm-th1, lemma1, kahane-61, section-62, list")
      ->required();
  run->add_option("--params", run_params, "experiment parameters (JSON)");
  run->callback([&] {
    Api api(g);
    if (experiment == "list") {
      Json reply = api.run("experiment.list", Json::object());
      std::cout << reply.dump(2) << "\n";
      return;
    }
    Json req{{"experiment", experiment},
             {"params", Json::parse(run_params)},
             {"seed", g.seed}};
    if (g.precision > 0) req["precision"] = g.precision;
    Json reply = api.run("experiment.run", req);
    emit_report(g, reply.at("report"));
    for (const auto& [name, content] : reply.at("files").items()) {
      emit(g, name, content.get<std::string>());
    }
    bool pass = reply.at("pass").get<bool>();
    for (const auto& check : reply.at("report").at("checks")) {
      std::cout << (check.at("pass").get<bool>() ? "[pass] " : "[FAIL] ")
                << check.at("name").get<std::string>() << ": "
                << check.at("detail").get<std::string>() << "\n";
    }
    if (!pass) throw std::runtime_error("experiment checks failed");
  });
  auto* plot = app.add_subcommand("plotdata", "extract a CSV series");
  std::string report_file, kind;
  plot->add_option("--report", report_file, "report JSON file")->required();
  plot->add_option("--kind", kind, "series name")->required();
  plot->add_option("--csv", csv_out, "CSV file name");
  plot->callback([&] {
    Api api(g);
    Json reply = api.run("plotdata",
                         Json{{"report", load_json_file(report_file)},
                              {"kind", kind}});
    emit(g, csv_out, reply.at("csv").get<std::string>());
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
