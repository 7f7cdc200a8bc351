#pragma once

#include <string>

#include <json.hpp>

#include "rieszprod/ball.hpp"
#include "rieszprod/ipcheck.hpp"
#include "rieszprod/oracle.hpp"
#include "rieszprod/riesz.hpp"
#include "rieszprod/sequences.hpp"

namespace rieszprod::io {

using Json = nlohmann::ordered_json;

// Number of significant digits used for human-readable decimal columns.
inline constexpr std::size_t kCsvDigits = 30;

Json ball_to_json(const RealBall& value);
RealBall ball_from_json(const Json& j);

Json seq_to_json(const sequences::IndexedSequence& seq);
sequences::IndexedSequence seq_from_json(const Json& j);

Json spec_to_json(const riesz::RieszSpec& spec);
riesz::RieszSpec spec_from_json(const Json& j);

Json atoms_to_json(const ipcheck::AtomicMeasure& mu);
ipcheck::AtomicMeasure atoms_from_json(const Json& j);

// Coefficient tables: "frequency,value,radius" CSV rows sorted by frequency.
std::string spectrum_to_csv(const oracle::SparseSpectrum& spectrum);
oracle::SparseSpectrum spectrum_from_csv(const std::string& text, int prec);

// Generator dispatch shared by the C API and the experiment engine.
sequences::IndexedSequence generate_sequence(const std::string& family,
                                             const Json& params,
                                             std::size_t count);

Json parse_json(const std::string& text);
std::string dump_json(const Json& j);

}  // namespace rieszprod::io
