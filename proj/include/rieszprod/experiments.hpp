#pragma once

#include <map>
#include <string>

#include "rieszprod/io.hpp"

namespace rieszprod::experiments {

using io::Json;

struct RunResult {
  Json report;                                  // deterministic, ordered
  std::map<std::string, std::string> files;     // extra CSV outputs by name
  bool pass = false;
};

// Known experiment names, in the order `run list` reports them.
const std::vector<std::string>& experiment_names();

// config: {"experiment": name, "params": {...}, "precision": bits,
// "seed": n}. Unknown params are rejected. The same config always produces
// byte-identical output.
RunResult run_experiment(const Json& config);

// Extracts a named series from a report as CSV (header always present).
std::string emit_plotdata(const Json& report, const std::string& kind);

}  // namespace rieszprod::experiments
