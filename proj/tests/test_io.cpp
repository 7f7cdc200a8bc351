#include <doctest.h>

#include "rieszprod/errors.hpp"
#include "rieszprod/io.hpp"

using namespace rieszprod;
namespace io = rieszprod::io;

TEST_CASE("ball serialization round trip is bit-exact") {
  RealBall x = sinpi(Rational(1, 7), 128);
  io::Json j = io::ball_to_json(x);
  RealBall back = io::ball_from_json(j);
  CHECK(back.mid() == x.mid());
  // The radius may be re-rounded upward, never shrunk.
  CHECK(back.rad() >= x.rad());
  CHECK(io::ball_to_json(back)["mid_hex"] == j["mid_hex"]);
  CHECK_THROWS_AS(io::ball_from_json(io::Json{{"mid_hex", "0x1p0"}}),
                  ParseError);
}

TEST_CASE("sequence serialization round trip") {
  auto seq = sequences::complete_sumset_sequence(4);
  io::Json j = io::seq_to_json(seq);
  auto back = io::seq_from_json(j);
  CHECK(back.family() == seq.family());
  REQUIRE(back.size() == seq.size());
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    CHECK(back.term(k) == seq.term(k));
  }
  CHECK(back.markers() == seq.markers());
  CHECK(back.bases() == seq.bases());
  REQUIRE(back.has_blocks());
  CHECK(back.blocks().size() == seq.blocks().size());
  // Byte-identical re-serialization.
  CHECK(io::dump_json(io::seq_to_json(back)) == io::dump_json(j));
}

TEST_CASE("spec serialization round trip") {
  auto seq = sequences::square_exponent_sequence(BigInt(2), 8);
  auto spec = riesz::choose_m_sequence(seq, std::nullopt, 128);
  io::Json j = io::spec_to_json(spec);
  auto back = io::spec_from_json(j);
  CHECK(back.first == spec.first);
  CHECK(back.orders == spec.orders);
  CHECK(back.eps == spec.eps);
  CHECK(io::dump_json(io::spec_to_json(back)) == io::dump_json(j));
  riesz::check_dissociation(back);
}

TEST_CASE("atomic measure serialization") {
  ipcheck::AtomicMeasure mu{{UnimodularPoint(Rational(1, 3)),
                             UnimodularPoint(Rational(1, 2))},
                            {Rational(2, 5), Rational(3, 5)}};
  io::Json j = io::atoms_to_json(mu);
  auto back = io::atoms_from_json(j);
  REQUIRE(back.atoms.size() == 2);
  CHECK(back.atoms[0].rational_angle() == Rational(1, 3));
  CHECK(back.weights[1] == Rational(3, 5));
  io::Json bad = j;
  bad["weights"][0] = "1/5";
  CHECK_THROWS_AS(io::atoms_from_json(bad), ValidationError);
}

TEST_CASE("spectrum CSV round trip encloses the original") {
  auto spec = riesz::RieszSpec{
      sequences::custom_sequence({BigInt(1), BigInt(10), BigInt(100)}),
      1,
      {BigInt(1), BigInt(1), BigInt(1)},
      std::nullopt,
      {}};
  auto table = oracle::expand_product(spec, 192);
  std::string csv = io::spectrum_to_csv(table);
  auto back = io::spectrum_from_csv(csv, 192);
  REQUIRE(back.table.size() == table.table.size());
  CHECK(back.bandwidth == table.bandwidth);
  for (const auto& [freq, value] : table.table) {
    const RealBall* parsed = back.find(freq);
    REQUIRE(parsed);
    // Decimal output rounds the midpoint; 30 digits leave overlap intact.
    CHECK(parsed->overlaps(value));
  }
  CHECK_THROWS_AS(io::spectrum_from_csv("frequency,value,radius\n", 64),
                  ParseError);
  CHECK_THROWS_AS(io::spectrum_from_csv("bogus\n1,2\n", 64), ParseError);
}

TEST_CASE("sequence generator dispatch") {
  auto et = io::generate_sequence("erdos-taylor", io::Json::object(), 5);
  CHECK(et.term(5) == BigInt(65));
  auto pw = io::generate_sequence("pow2sq", io::Json::object(), 4);
  CHECK(pw.term(4) == BigInt(65536));
  auto pw3 = io::generate_sequence("pow2sq", io::Json{{"base", "3"}}, 3);
  CHECK(pw3.term(3) == BigInt(19683));
  auto db = io::generate_sequence("divergent-blocks", io::Json::object(), 4);
  CHECK(db.has_blocks());
  io::Json custom{{"terms", {"4", "9", "11"}}};
  auto cu = io::generate_sequence("custom", custom, 0);
  CHECK(cu.term(2) == BigInt(9));
  CHECK_THROWS_AS(io::generate_sequence("nope", io::Json::object(), 3),
                  ValidationError);
}
