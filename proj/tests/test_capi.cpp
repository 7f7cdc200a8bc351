#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "rieszprod.h"

namespace {

using Json = nlohmann::ordered_json;

struct Ctx {
  rzp_ctx* ptr;
  explicit Ctx(int prec = 0) : ptr(rzp_ctx_new(prec)) {}
  ~Ctx() { rzp_ctx_free(ptr); }
};

std::string take(char* text) {
  std::string out = text ? text : "";
  rzp_string_free(text);
  return out;
}

Json run_op(rzp_ctx* ctx, const char* op, const Json& req) {
  char* reply = nullptr;
  rzp_status status = rzp_run(ctx, op, req.dump().c_str(), &reply);
  REQUIRE(status == RZP_OK);
  return Json::parse(take(reply));
}

}  // namespace

TEST_CASE("context and version") {
  CHECK(std::strcmp(rzp_version(), "0.1.0") == 0);
  Ctx ctx(192);
  REQUIRE(ctx.ptr);
  CHECK(rzp_ctx_precision(ctx.ptr) == 192);
  Ctx fallback(0);
  CHECK(rzp_ctx_precision(fallback.ptr) == 128);
  CHECK(std::string(rzp_last_error(ctx.ptr)).empty());
}

TEST_CASE("sequence handles") {
  Ctx ctx;
  rzp_seq* seq = nullptr;
  REQUIRE(rzp_seq_generate(ctx.ptr, "erdos-taylor", "{}", 7, &seq) == RZP_OK);
  CHECK(rzp_seq_size(seq) == 7);
  char* term = nullptr;
  REQUIRE(rzp_seq_term(ctx.ptr, seq, 7, &term) == RZP_OK);
  CHECK(take(term) == "1957");
  // Out-of-range index reports through the context.
  char* bad = nullptr;
  CHECK(rzp_seq_term(ctx.ptr, seq, 8, &bad) == RZP_ERROR_INVALID);
  CHECK(std::string(rzp_last_error(ctx.ptr)).find("out of range") !=
        std::string::npos);
  char* json = nullptr;
  REQUIRE(rzp_seq_to_json(ctx.ptr, seq, &json) == RZP_OK);
  std::string text = take(json);
  rzp_seq* back = nullptr;
  REQUIRE(rzp_seq_from_json(ctx.ptr, text.c_str(), &back) == RZP_OK);
  CHECK(rzp_seq_size(back) == 7);
  rzp_seq_free(back);
  rzp_seq_free(seq);
  // Unknown family.
  rzp_seq* nope = nullptr;
  CHECK(rzp_seq_generate(ctx.ptr, "nope", "{}", 3, &nope) ==
        RZP_ERROR_INVALID);
  CHECK(rzp_seq_from_json(ctx.ptr, "{not json", &nope) == RZP_ERROR_PARSE);
}

TEST_CASE("spec handles") {
  Ctx ctx;
  rzp_seq* seq = nullptr;
  REQUIRE(rzp_seq_generate(ctx.ptr, "pow2sq", nullptr, 12, &seq) == RZP_OK);
  rzp_spec* spec = nullptr;
  REQUIRE(rzp_spec_choose_m(ctx.ptr, seq, nullptr, &spec) == RZP_OK);
  char* cert_text = nullptr;
  REQUIRE(rzp_spec_certify(ctx.ptr, spec, &cert_text) == RZP_OK);
  Json cert = Json::parse(take(cert_text));
  CHECK(cert.at("lengths_increasing").get<bool>());
  char* coeff_text = nullptr;
  REQUIRE(rzp_spec_coeff(ctx.ptr, spec, "0", &coeff_text) == RZP_OK);
  Json coeff = Json::parse(take(coeff_text));
  CHECK(coeff.at("value").get<std::string>().substr(0, 2) == "1.");
  CHECK(coeff.at("digits").is_object());
  char* spec_text = nullptr;
  REQUIRE(rzp_spec_to_json(ctx.ptr, spec, &spec_text) == RZP_OK);
  std::string serialized = take(spec_text);
  rzp_spec* back = nullptr;
  REQUIRE(rzp_spec_from_json(ctx.ptr, serialized.c_str(), &back) == RZP_OK);
  rzp_spec_free(back);
  rzp_spec_free(spec);
  // Infeasible construction surfaces as its own status.
  rzp_seq* slow = nullptr;
  REQUIRE(rzp_seq_from_json(
              ctx.ptr,
              R"({"family":"custom","terms":["2","3","4","5"]})",
              &slow) == RZP_OK);
  rzp_spec* none = nullptr;
  CHECK(rzp_spec_choose_m(ctx.ptr, slow, nullptr, &none) ==
        RZP_ERROR_INFEASIBLE);
  rzp_seq_free(slow);
  rzp_seq_free(seq);
}

TEST_CASE("op runner") {
  Ctx ctx;
  Json phi = run_op(ctx.ptr, "kernel.phi", Json{{"x", "1/6"}});
  CHECK(phi.at("value").get<std::string>() == "1/4");
  Json bound = run_op(ctx.ptr, "kernel.phi_bound", Json::object());
  CHECK(bound.at("c").get<std::string>() == "54");
  CHECK(bound.at("j0").get<int>() == 4);
  Json list = run_op(ctx.ptr, "experiment.list", Json::object());
  CHECK(list.at("experiments").size() == 9);
  Json sums = run_op(
      ctx.ptr, "ip.subset_sums",
      Json{{"seq", Json{{"family", "custom"},
                        {"terms", {"1", "2", "3"}}}},
           {"lo", 1},
           {"hi", 3}});
  CHECK(sums.at("sums").size() == 6);
  // Errors: unknown op and guarded enumerations.
  char* reply = nullptr;
  CHECK(rzp_run(ctx.ptr, "nope", "{}", &reply) == RZP_ERROR_INVALID);
  CHECK(rzp_run(ctx.ptr, "ip.sumset_union", R"({"qmax": 9})", &reply) ==
        RZP_ERROR_GUARD);
  CHECK(std::string(rzp_last_error(ctx.ptr)).find("qmax") !=
        std::string::npos);
}

TEST_CASE("experiment through the C surface") {
  Ctx ctx;
  Json reply = run_op(ctx.ptr, "experiment.run",
                      Json{{"experiment", "lemma1"}, {"seed", 1}});
  CHECK(reply.at("pass").get<bool>());
  CHECK(reply.at("report").at("experiment").get<std::string>() == "lemma1");
  Json again = run_op(ctx.ptr, "experiment.run",
                      Json{{"experiment", "lemma1"}, {"seed", 1}});
  CHECK(reply.dump() == again.dump());
}
