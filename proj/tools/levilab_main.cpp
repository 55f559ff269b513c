#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "levilab/run.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_number(const std::string& s, const char* invariant) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw levilab::ValidationError(invariant, "cannot parse number " + s);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "levilab: extended weight decompositions, intrinsic Levi forms, cone "
      "verdicts, and invariant domain counts for group orbit hypersurfaces"};

  std::string config_path, case_name, eta_csv, ops_csv, out_path;
  std::vector<std::string> tol_kv;
  std::uint64_t seed = 0;
  bool seed_given = false, verify = false, quiet = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--case", case_name, "catalog case name, e.g. sl2:s11-theta:k=1");
  app.add_option("--eta", eta_csv, "comma-separated eta coordinates");
  app.add_option("--ops", ops_csv,
                 "comma-separated subset of weights,orbit,levi,cone,domains,verify");
  app.add_option_function<std::uint64_t>(
         "--seed",
         [&](std::uint64_t v) {
           seed = v;
           seed_given = true;
         },
         "random seed (fallback: LEVILAB_SEED, then 42)");
  app.add_option("--tol", tol_kv, "tolerance override KEY=VAL, repeatable");
  app.add_flag("--verify", verify, "append the verify stage to the requested ops");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_flag("--quiet", quiet, "no stdout echo when writing to a file");
  CLI11_PARSE(app, argc, argv);

  levilab::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        throw levilab::ValidationError("config-file",
                                       "cannot open " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = levilab::parse_config(buf.str());
    }
    if (!case_name.empty()) {
      cfg.spec = levilab::parse_case_name(case_name);
      cfg.case_label = case_name;
    }
    if (!eta_csv.empty()) {
      std::vector<std::string> parts = split_csv(eta_csv);
      cfg.eta.resize(static_cast<int>(parts.size()));
      for (size_t i = 0; i < parts.size(); ++i)
        cfg.eta(static_cast<int>(i)) = parse_number(parts[i], "eta-parse");
      cfg.has_eta = true;
    }
    if (!ops_csv.empty()) {
      cfg.ops = split_csv(ops_csv);
    }
    if (verify &&
        std::find(cfg.ops.begin(), cfg.ops.end(), "verify") == cfg.ops.end() &&
        !cfg.ops.empty())
      cfg.ops.push_back("verify");
    for (const std::string& kv : tol_kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw levilab::ValidationError("tol-parse",
                                       "--tol expects KEY=VAL, got " + kv);
      cfg.tol_overrides[kv.substr(0, eq)] =
          parse_number(kv.substr(eq + 1), "tol-parse");
    }
    if (seed_given) cfg.seed = seed;
    if (!out_path.empty()) cfg.output = out_path;
    if (quiet) cfg.quiet = true;
    if (cfg.case_label.empty() && config_path.empty())
      throw levilab::ValidationError("case-missing",
                                     "provide --case or --config");
  } catch (const levilab::ValidationError& e) {
    std::cerr << "levilab: " << e.what() << "\n";
    return 2;
  }

  levilab::RunResult result = levilab::run(cfg);
  if (!result.error.empty()) std::cerr << "levilab: " << result.error << "\n";

  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "levilab: cannot write " << cfg.output << "\n";
      return 2;
    }
    out << result.report;
    if (!cfg.quiet) std::cout << result.report;
  } else {
    std::cout << result.report;
  }
  return result.exit_code;
}
