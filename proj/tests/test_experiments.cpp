#include <doctest.h>

#include "rieszprod/errors.hpp"
#include "rieszprod/experiments.hpp"

using namespace rieszprod;
namespace ex = rieszprod::experiments;
using ex::Json;

TEST_CASE("experiment registry") {
  const auto& names = ex::experiment_names();
  CHECK(names.size() == 9);
  CHECK(std::find(names.begin(), names.end(), "lemma1") != names.end());
  CHECK(std::find(names.begin(), names.end(), "section-62") != names.end());
  CHECK_THROWS_AS(ex::run_experiment(Json{{"experiment", "nope"}}),
                  ValidationError);
  CHECK_THROWS_AS(ex::run_experiment(Json::object()), ValidationError);
}

TEST_CASE("sumset experiment passes and is deterministic") {
  Json config{{"experiment", "lemma1"}, {"seed", 3}};
  auto a = ex::run_experiment(config);
  auto b = ex::run_experiment(config);
  CHECK(a.pass);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report.at("checks").size() == 3);
  for (const auto& check : a.report.at("checks")) {
    CHECK(check.at("pass").get<bool>());
  }
}

TEST_CASE("single-case sumset parameters") {
  Json config{{"experiment", "lemma1"},
              {"params", Json{{"l", 3}, {"q", 0}}}};
  auto r = ex::run_experiment(config);
  CHECK(r.pass);
  CHECK(r.report.at("results").at("cases").size() == 1);
}

TEST_CASE("angle-sampled experiments respect the seed") {
  Json c1{{"experiment", "section-62"}, {"seed", 7}};
  Json c2{{"experiment", "section-62"}, {"seed", 8}};
  auto a = ex::run_experiment(c1);
  auto b = ex::run_experiment(c1);
  auto c = ex::run_experiment(c2);
  CHECK(a.pass);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report.dump() != c.report.dump());
}

TEST_CASE("plot series extraction") {
  Json series = Json::object();
  series["deviation-vs-k0"] =
      Json{{"header", Json::array({"k0", "deviation"})},
           {"rows", Json::array({Json::array({"1", "0.5"}),
                                 Json::array({"2", "0.25"})})}};
  series["empty"] = Json{{"header", Json::array({"k", "value"})},
                         {"rows", Json::array()}};
  Json report{{"series", series}};
  std::string csv = ex::emit_plotdata(report, "deviation-vs-k0");
  CHECK(csv == "k0,deviation\n1,0.5\n2,0.25\n");
  // Empty windows keep the header only.
  CHECK(ex::emit_plotdata(report, "empty") == "k,value\n");
  CHECK_THROWS_AS(ex::emit_plotdata(report, "nope"), ValidationError);
}
