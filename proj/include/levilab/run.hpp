#pragma once

#include <map>

#include "levilab/catalog.hpp"
#include "levilab/domains.hpp"
#include "levilab/verify.hpp"

namespace levilab {

enum class CartanChoice { fundamental, menu, inline_basis };

// Batch pipeline configuration. A run builds the case, selects a Cartan
// datum, decomposes, and executes the requested stages in order
// weights -> orbit -> levi -> cone -> domains -> verify, pulling in any
// stage an explicitly requested one depends on.
struct RunConfig {
  CaseSpec spec;
  std::string case_label;
  CartanChoice cartan = CartanChoice::fundamental;
  int menu_index = 0;
  MatrixXd cartan_basis;  // inline datum: realified columns
  VectorXd cartan_nu;     // inline datum: realified nu
  bool has_eta = false;
  VectorXd eta;           // coordinates on the datum basis; default zero
  std::vector<std::string> ops;
  std::map<std::string, double> tol_overrides;
  std::uint64_t seed = default_seed();
  std::string output;     // report path; empty writes to stdout
  bool quiet = false;
};

// Reads the JSON config document (see schemas/config.schema.json).
RunConfig parse_config(const std::string& json_text);

struct RunResult {
  int exit_code = 0;   // 0 ok, 2 validation error, 3 numerical degeneracy
  std::string report;  // JSON document; an error document on failure
  std::string error;   // one-line summary, empty on success
};

// Executes the pipeline. Reports are byte-identical for identical
// (config, seed); floats carry 12 significant digits, complex numbers are
// [re, im] pairs. Failures name the module, operation, and invariant.
RunResult run(const RunConfig& cfg);

}  // namespace levilab
