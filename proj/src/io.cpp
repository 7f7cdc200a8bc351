#include "rieszprod/io.hpp"

#include <sstream>

#include "rieszprod/errors.hpp"

namespace rieszprod::io {

Json ball_to_json(const RealBall& value) {
  return Json{{"mid_hex", value.mid().to_hex()},
              {"rad_hex", value.rad().to_hex()},
              {"prec", value.prec()}};
}

RealBall ball_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("mid_hex") || !j.contains("rad_hex"))
    throw ParseError("ball: expected {mid_hex, rad_hex, prec}");
  Dyadic mid = Dyadic::parse_hex(j.at("mid_hex").get<std::string>());
  Dyadic rad = Dyadic::parse_hex(j.at("rad_hex").get<std::string>());
  int prec = j.value("prec", kDefaultPrecision);
  RealBall out = RealBall::exact(mid, prec);
  return out + RealBall::from_midrad(Dyadic(), rad, prec);
}

Json seq_to_json(const sequences::IndexedSequence& seq) {
  Json j;
  j["family"] = seq.family();
  Json params = Json::object();
  for (const auto& [key, value] : seq.params()) params[key] = value;
  j["params"] = params;
  Json terms = Json::array();
  for (const BigInt& t : seq.terms()) terms.push_back(t.to_decimal());
  j["terms"] = terms;
  if (seq.has_blocks()) {
    Json blocks = Json::array();
    for (const auto& b : seq.blocks()) {
      Json mult = Json::array();
      for (const BigInt& q : b.multipliers) mult.push_back(q.to_decimal());
      blocks.push_back(Json{{"base", b.base.to_decimal()},
                            {"multipliers", mult},
                            {"start", b.start},
                            {"end", b.end}});
    }
    j["blocks"] = blocks;
  }
  if (seq.has_markers()) {
    Json markers = Json::array();
    for (std::size_t m : seq.markers()) markers.push_back(m);
    j["markers"] = markers;
  }
  if (!seq.bases().empty()) {
    Json bases = Json::array();
    for (const BigInt& b : seq.bases()) bases.push_back(b.to_decimal());
    j["bases"] = bases;
  }
  return j;
}

sequences::IndexedSequence seq_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms"))
    throw ParseError("sequence: expected {family, terms, ...}");
  std::vector<BigInt> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back(BigInt::from_decimal(t.get<std::string>()));
  }
  sequences::IndexedSequence seq(j.value("family", std::string("custom")),
                                 std::move(terms));
  if (j.contains("params")) {
    for (const auto& [key, value] : j.at("params").items()) {
      seq.set_param(key, value.get<std::string>());
    }
  }
  if (j.contains("blocks")) {
    std::vector<sequences::Block> blocks;
    for (const auto& b : j.at("blocks")) {
      sequences::Block block;
      block.base = BigInt::from_decimal(b.at("base").get<std::string>());
      for (const auto& q : b.at("multipliers")) {
        block.multipliers.push_back(
            BigInt::from_decimal(q.get<std::string>()));
      }
      block.start = b.at("start").get<std::size_t>();
      block.end = b.at("end").get<std::size_t>();
      blocks.push_back(std::move(block));
    }
    seq.set_blocks(std::move(blocks));
  }
  if (j.contains("markers")) {
    std::vector<std::size_t> markers;
    for (const auto& m : j.at("markers")) markers.push_back(m.get<std::size_t>());
    seq.set_markers(std::move(markers));
  }
  if (j.contains("bases")) {
    std::vector<BigInt> bases;
    for (const auto& b : j.at("bases")) {
      bases.push_back(BigInt::from_decimal(b.get<std::string>()));
    }
    seq.set_bases(std::move(bases));
  }
  return seq;
}

Json spec_to_json(const riesz::RieszSpec& spec) {
  Json j;
  j["seq"] = seq_to_json(spec.seq);
  j["first"] = spec.first;
  Json orders = Json::array();
  for (const BigInt& m : spec.orders) orders.push_back(m.to_decimal());
  j["m"] = orders;
  if (spec.caps) {
    Json caps = Json::array();
    for (const BigInt& c : *spec.caps) caps.push_back(c.to_decimal());
    j["caps"] = caps;
  }
  if (!spec.eps.empty()) {
    Json eps = Json::array();
    for (const Rational& e : spec.eps) eps.push_back(e.to_string());
    j["eps"] = eps;
  }
  return j;
}

riesz::RieszSpec spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("seq") || !j.contains("m"))
    throw ParseError("spec: expected {seq, first, m, caps?, eps?}");
  riesz::RieszSpec spec{seq_from_json(j.at("seq")),
                        j.value("first", std::size_t{1}),
                        {},
                        std::nullopt,
                        {}};
  for (const auto& m : j.at("m")) {
    spec.orders.push_back(BigInt::from_decimal(m.get<std::string>()));
  }
  if (j.contains("caps")) {
    std::vector<BigInt> caps;
    for (const auto& c : j.at("caps")) {
      caps.push_back(BigInt::from_decimal(c.get<std::string>()));
    }
    spec.caps = std::move(caps);
  }
  if (j.contains("eps")) {
    for (const auto& e : j.at("eps")) {
      spec.eps.push_back(Rational::parse(e.get<std::string>()));
    }
  }
  return spec;
}

Json atoms_to_json(const ipcheck::AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& atom : mu.atoms) {
    if (atom.is_rational()) {
      atoms.push_back(atom.rational_angle().to_string());
    } else {
      atoms.push_back(ball_to_json(atom.ball_angle()));
    }
  }
  Json weights = Json::array();
  for (const Rational& w : mu.weights) weights.push_back(w.to_string());
  return Json{{"atoms", atoms}, {"weights", weights}};
}

ipcheck::AtomicMeasure atoms_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("weights"))
    throw ParseError("atoms: expected {atoms, weights}");
  ipcheck::AtomicMeasure mu;
  for (const auto& a : j.at("atoms")) {
    if (a.is_string()) {
      mu.atoms.emplace_back(Rational::parse(a.get<std::string>()));
    } else {
      mu.atoms.emplace_back(ball_from_json(a));
    }
  }
  for (const auto& w : j.at("weights")) {
    mu.weights.push_back(Rational::parse(w.get<std::string>()));
  }
  mu.validate();
  return mu;
}

std::string spectrum_to_csv(const oracle::SparseSpectrum& spectrum) {
  std::ostringstream out;
  out << "frequency,value,radius\n";
  for (const auto& [freq, value] : spectrum.table) {
    out << freq.to_decimal() << "," << value.mid().to_decimal(kCsvDigits)
        << "," << value.rad().to_decimal(4) << "\n";
  }
  return out.str();
}

oracle::SparseSpectrum spectrum_from_csv(const std::string& text, int prec) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  oracle::SparseSpectrum spectrum;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t c1 = line.find(',');
    std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ParseError("CSV row needs frequency,value,radius");
    BigInt freq = BigInt::from_decimal(line.substr(0, c1));
    // Columns carry decimal scientific notation; parse through rationals.
    auto parse_decimal = [](const std::string& field) {
      // [-]d.ddd...e[+-]E  ->  exact rational.
      std::size_t epos = field.find('e');
      std::string mant = epos == std::string::npos ? field
                                                   : field.substr(0, epos);
      long long exp10 = 0;
      if (epos != std::string::npos)
        exp10 = std::stoll(field.substr(epos + 1));
      std::size_t dot = mant.find('.');
      std::string digits = mant;
      long long frac_digits = 0;
      if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        frac_digits = static_cast<long long>(mant.size() - dot - 1);
      }
      Rational value(BigInt::from_decimal(digits));
      long long net = exp10 - frac_digits;
      if (net >= 0) {
        value *= Rational(BigInt(10).pow(static_cast<std::uint64_t>(net)));
      } else {
        value /= Rational(BigInt(10).pow(static_cast<std::uint64_t>(-net)));
      }
      return value;
    };
    Rational mid = parse_decimal(line.substr(c1 + 1, c2 - c1 - 1));
    Rational rad = parse_decimal(line.substr(c2 + 1));
    RealBall ball = RealBall::from_rational(mid, prec);
    if (!rad.is_zero()) {
      Dyadic r = Dyadic::from_rational(rad, 32, Round::Ceil);
      ball = ball + RealBall::from_midrad(Dyadic(), r, prec);
    }
    auto [it, inserted] = spectrum.table.emplace(freq, ball);
    if (!inserted) throw ParseError("duplicate frequency in CSV");
    BigInt mag = freq.abs();
    if (mag > spectrum.bandwidth) spectrum.bandwidth = mag;
  }
  if (spectrum.table.empty()) throw ParseError("CSV carries no rows");
  return spectrum;
}

sequences::IndexedSequence generate_sequence(const std::string& family,
                                             const Json& params,
                                             std::size_t count) {
  auto param_str = [&](const char* key, const std::string& fallback) {
    if (params.is_object() && params.contains(key))
      return params.at(key).get<std::string>();
    return fallback;
  };
  if (family == "erdos-taylor") return sequences::erdos_taylor(count);
  if (family == "complete-sumset")
    return sequences::complete_sumset_sequence(count);
  if (family == "pow2sq" || family == "square-exponent") {
    BigInt base = BigInt::from_decimal(param_str("base", "2"));
    return sequences::square_exponent_sequence(base, count);
  }
  if (family == "geometric") {
    BigInt ratio = BigInt::from_decimal(param_str("ratio", "2"));
    return sequences::geometric_sequence(ratio, count);
  }
  if (family == "divergent-blocks") {
    if (params.is_object() && params.contains("gamma")) {
      std::vector<Rational> gamma;
      for (const auto& g : params.at("gamma"))
        gamma.push_back(Rational::parse(g.get<std::string>()));
      std::vector<BigInt> rs;
      for (const auto& r : params.at("r"))
        rs.push_back(BigInt::from_decimal(r.get<std::string>()));
      return sequences::divergent_block_sequence(gamma, rs);
    }
    return sequences::divergent_block_sequence(
        sequences::default_gamma_table(count),
        sequences::default_r_table(count));
  }
  if (family == "blocks") {
    std::vector<BigInt> bases;
    for (const auto& b : params.at("bases"))
      bases.push_back(BigInt::from_decimal(b.get<std::string>()));
    std::vector<std::vector<BigInt>> mults;
    for (const auto& list : params.at("multipliers")) {
      std::vector<BigInt> row;
      for (const auto& q : list)
        row.push_back(BigInt::from_decimal(q.get<std::string>()));
      mults.push_back(std::move(row));
    }
    return sequences::block_sequence(bases, mults);
  }
  if (family == "custom") {
    std::vector<BigInt> terms;
    for (const auto& t : params.at("terms"))
      terms.push_back(BigInt::from_decimal(t.get<std::string>()));
    return sequences::custom_sequence(std::move(terms));
  }
  throw ValidationError("unknown sequence family: " + family);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rieszprod::io
