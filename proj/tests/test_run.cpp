#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levilab/run.hpp"
#include "support.hpp"

using namespace levilab;
using levitest::fixture;
using nlohmann::json;

namespace {

const char* kFullDoc = R"({
  "case": "sl2:theta-s11:k=1",
  "eta": [0.3],
  "ops": ["weights", "orbit", "levi", "cone", "domains", "verify"],
  "seed": 42
})";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parsing honors every key and rejects the rest") {
  RunConfig cfg = parse_config(R"({
    "case": "sl2:s11-theta:k=2",
    "cartan": {"menu": 0},
    "eta": [0.1],
    "ops": ["levi"],
    "tol": {"membership": 1e-7},
    "seed": 7,
    "output": "out.json",
    "quiet": true
  })");
  CHECK(cfg.spec.pair == "s11-theta");
  CHECK(cfg.spec.k == 2);
  CHECK(cfg.cartan == CartanChoice::menu);
  CHECK(cfg.menu_index == 0);
  CHECK(cfg.has_eta);
  CHECK(cfg.eta(0) == doctest::Approx(0.1));
  CHECK(cfg.ops == std::vector<std::string>{"levi"});
  CHECK(cfg.tol_overrides.at("membership") == doctest::Approx(1e-7));
  CHECK(cfg.seed == 7);
  CHECK(cfg.output == "out.json");
  CHECK(cfg.quiet);

  RunConfig fun = parse_config(R"({"case": "sl2:s11-s11:k=1", "cartan": "fundamental"})");
  CHECK(fun.cartan == CartanChoice::fundamental);

  CHECK_THROWS_AS(parse_config(R"({"case": "sl2:s11-s11:k=1", "bogus": 1})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"case": "sl2:s11-s11:k=1", "ops": []})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"case": "sl2:s11-s11:k=1", "ops": ["x"]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"ops": ["levi"]})"), ValidationError);
  CHECK_THROWS_AS(
      parse_config(R"({"case": "sl2:s11-s11:k=1", "tol": {"nope": 1.0}})"),
      ValidationError);
}

TEST_CASE("identical configs produce byte-identical reports") {
  RunResult a = run(parse_config(kFullDoc));
  RunResult b = run(parse_config(kFullDoc));
  REQUIRE(a.exit_code == 0);
  CHECK(a.report == b.report);
  CHECK(a.error.empty());
}

TEST_CASE("the report carries the frozen end-to-end values") {
  RunResult r = run(parse_config(kFullDoc));
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc["tool"] == "levilab");
  CHECK(doc["case"]["name"] == "sl2:theta-s11:k=1");
  CHECK(doc["cartan"]["source"] == "fundamental");
  CHECK(doc["cartan"]["rank"] == 1);
  CHECK(doc["cartan"]["t_dim"] == 1);
  CHECK(doc["weights"]["count"] == 3);
  CHECK(doc["orbit"]["codim"] == 1);
  CHECK(doc["orbit"]["strongly_regular"] == true);
  CHECK(doc["levi"]["hypersurface"] == true);
  CHECK(doc["levi"]["inertia"]["plus"] == 1);
  CHECK(doc["levi"]["inertia"]["minus"] == 1);
  CHECK(doc["levi"]["inertia"]["zero"] == 0);
  CHECK(doc["cone"]["case"] == "compact_nontrivial_a_full");
  CHECK(doc["cone"]["full"] == true);
  CHECK(doc["domains"]["q_complete"]["theorem"] == 2);
  CHECK(doc["domains"]["q_complete"]["proof"] == 2);
  CHECK(doc["domains"]["q_complete"]["discrepancy"] == false);
  CHECK(doc["verify"]["adjoint"]["worst"].get<double>() < 1e-7);
  CHECK(doc["verify"]["formula_equivalence"]["max_deviation"].get<double>() <
        1e-9);
  CHECK(doc["verify"]["extrinsic"]["defining_function"] == "tr(z* z J)");
  CHECK(doc["verify"]["extrinsic"]["matches_intrinsic"] == true);
}

TEST_CASE("requested stages pull dependencies and nothing else") {
  RunResult r = run(parse_config(R"({"case": "sl2:s11-theta:k=1", "ops": ["levi"]})"));
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc.contains("weights"));
  CHECK(doc.contains("orbit"));
  CHECK(doc.contains("levi"));
  CHECK(!doc.contains("cone"));
  CHECK(!doc.contains("domains"));
  CHECK(!doc.contains("verify"));
}

TEST_CASE("validation failures exit with code two and an error document") {
  RunConfig cfg = parse_config(R"({"case": "sl2:s11-theta:k=1", "eta": [0.1, 0.2]})");
  RunResult r = run(cfg);
  CHECK(r.exit_code == 2);
  CHECK(!r.error.empty());
  json doc = json::parse(r.report);
  REQUIRE(doc.contains("error"));
  CHECK(doc["error"]["invariant"] == "eta-length");

  RunConfig menu = parse_config(R"({"case": "sl2:s11-theta:k=1", "cartan": {"menu": 7}})");
  CHECK(run(menu).exit_code == 2);
}

TEST_CASE("degenerate base points report the larger codimension") {
  RunResult r = run(parse_config(
      R"({"case": "sl2:s11-s11:k=1", "eta": [0], "ops": ["weights", "orbit"]})"));
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc["orbit"]["codim"] == 3);
  CHECK(doc["orbit"]["strongly_regular"] == false);
}

TEST_CASE("tolerance overrides reach the pipeline and the report") {
  RunResult r = run(parse_config(R"({
    "case": "sl2:s11-theta:k=1",
    "eta": [0.3],
    "ops": ["weights", "orbit"],
    "tol": {"membership": 10.0}
  })"));
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc["tolerance_overrides"]["membership"].get<double>() == 10.0);
  // with the membership band wide open every weight joins the isotropy
  CHECK(doc["orbit"]["codim"] == 3);
}

TEST_CASE("an inline cartan basis reproduces the menu datum") {
  const levitest::Fixture& f = fixture("sl2:s11-s11:k=1", 1);
  RunConfig cfg;
  cfg.spec = parse_case_name("sl2:s11-s11:k=1");
  cfg.case_label = "sl2:s11-s11:k=1";
  cfg.cartan = CartanChoice::inline_basis;
  cfg.cartan_basis = f.datum.c_basis;
  cfg.cartan_nu = f.datum.nu;
  cfg.has_eta = true;
  cfg.eta = VectorXd::Constant(1, 0.4);
  cfg.ops = {"weights", "orbit", "levi", "cone"};
  cfg.seed = 42;
  RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc["cartan"]["source"] == "inline");
  CHECK(doc["cartan"]["t_dim"] == 1);
  CHECK(doc["cone"]["case"] == "hermitian_pointed");
  CHECK(doc["cone"]["pointed"] == true);
}

TEST_CASE("the command line binary is deterministic byte for byte") {
  std::string cli = LEVILAB_CLI_PATH;
  std::string base = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                       : "/tmp");
  std::string f1 = base + "/levilab_det_1.json";
  std::string f2 = base + "/levilab_det_2.json";
  std::string args =
      " --case sl2:theta-s11:k=1 --eta 0.3"
      " --ops weights,orbit,levi,cone,domains,verify --seed 42 --quiet --out ";
  REQUIRE(std::system((cli + args + f1).c_str()) == 0);
  REQUIRE(std::system((cli + args + f2).c_str()) == 0);
  std::string r1 = slurp(f1), r2 = slurp(f2);
  CHECK(!r1.empty());
  CHECK(r1 == r2);
  // the in-process pipeline writes the very same bytes
  CHECK(r1 == run(parse_config(kFullDoc)).report);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("the seed falls back to the environment and then to 42") {
  setenv("LEVILAB_SEED", "1234", 1);
  CHECK(default_seed() == 1234);
  unsetenv("LEVILAB_SEED");
  CHECK(default_seed() == 42);
}
