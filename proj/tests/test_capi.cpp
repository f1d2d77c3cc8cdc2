#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cpvdw.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const char *kConfig = R"({
  "species": [{"name": "A", "oscillators": [{"omega": 1.0, "d2": 1.5}]}],
  "media": [{"name": "glass",
             "eps_poles": [{"omega_p": 1.0, "omega_t": 1.0}]}],
  "bodies": [
    {"name": "ball",
     "geometry": {"type": "sphere", "center": [0, 0, 0], "radius": 1.0},
     "composition": [{"species": "A", "density": 0.05}]}
  ],
  "cp_sphere": {
    "atom": {"species": "A", "position": [0, 0, 12.0]},
    "sphere": {"radius": 1.0, "medium": "glass", "center": [0, 0, 0]}
  },
  "problem": "cp-sphere"
})";

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cpvdw_version()) == "0.1.0");
  CHECK(std::string(cpvdw_status_name(CPVDW_OK)) == "ok");
  CHECK(std::string(cpvdw_status_name(CPVDW_ERR_CONFIG)) == "config");
  CHECK(std::string(cpvdw_status_name(CPVDW_ERR_NUMERICAL)) == "numerical");
}

TEST_CASE("model queries") {
  cpvdw_model *m = cpvdw_model_create(kConfig);
  REQUIRE(m != nullptr);

  double v = 0.0;
  REQUIRE(cpvdw_model_polarizability(m, "A", 0.0, &v) == CPVDW_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-14)); // (2/3)*1.5/1

  REQUIRE(cpvdw_model_permittivity(m, "glass", 0.0, &v) == CPVDW_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-14)); // 1 + wp^2/wt^2
  REQUIRE(cpvdw_model_permeability(m, "glass", 0.0, &v) == CPVDW_OK);
  CHECK(v == doctest::Approx(1.0));

  double chi = 0.0, q = 0.0;
  REQUIRE(cpvdw_model_susceptibility(m, "ball", 0.0, &chi) == CPVDW_OK);
  REQUIRE(cpvdw_model_q_factor(m, "ball", 0.0, &q) == CPVDW_OK);
  // sigma(0) = 0.05, t = sigma/3, chi = sigma/(1-t), q = -t/(1-t)
  const double t = 0.05 / 3.0;
  CHECK(chi == doctest::Approx(0.05 / (1.0 - t)).epsilon(1e-14));
  CHECK(q == doctest::Approx(-t / (1.0 - t)).epsilon(1e-14));
  CHECK(chi == doctest::Approx(-3.0 * q).epsilon(1e-14));

  double margin = 0.0;
  REQUIRE(cpvdw_model_convergence_margin(m, "ball", &margin) == CPVDW_OK);
  CHECK(margin == doctest::Approx(1.0 - (2.0 / 3.0) * 0.05).epsilon(1e-14));

  double ratio = 0.0, threshold = 0.0;
  REQUIRE(cpvdw_model_packing_ratio(m, "ball", 1.5, &ratio, &threshold) ==
          CPVDW_OK);
  CHECK(threshold == doctest::Approx(4.0)); // 8*1.5/3
  CHECK(ratio > threshold);                 // n = 0.05 is dilute

  SUBCASE("bad arguments") {
    CHECK(cpvdw_model_polarizability(m, "nope", 0.0, &v) ==
          CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(std::string(cpvdw_last_error()).find("nope") != std::string::npos);
    CHECK(cpvdw_last_status() == CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_model_polarizability(nullptr, "A", 0.0, &v) ==
          CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_model_polarizability(m, "A", 0.0, nullptr) ==
          CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_model_polarizability(m, "A", -1.0, &v) ==
          CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_model_packing_ratio(m, "ball", 1.0, &ratio, &threshold) ==
          CPVDW_ERR_INVALID_ARGUMENT);
  }

  cpvdw_model_destroy(m);
  cpvdw_model_destroy(nullptr); // must be a no-op
}

TEST_CASE("model creation failure reporting") {
  cpvdw_model *m = cpvdw_model_create("{\"species\": 3}");
  CHECK(m == nullptr);
  CHECK(cpvdw_last_status() == CPVDW_ERR_CONFIG);
  CHECK(std::string(cpvdw_last_error()).find("species") != std::string::npos);
  CHECK(cpvdw_model_create(nullptr) == nullptr);
}

TEST_CASE("run lifecycle") {
  cpvdw_run *r = cpvdw_run_create(kConfig);
  REQUIRE(r != nullptr);

  // before execute
  CHECK(std::string(cpvdw_run_csv(r)).empty());
  CHECK(cpvdw_run_exit_code(r) == -1);
  CHECK(std::string(cpvdw_run_output_path(r)) == "cp-sphere.csv");

  REQUIRE(cpvdw_run_execute(r) == CPVDW_OK);
  CHECK(cpvdw_run_exit_code(r) == 0);
  const std::string csv1 = cpvdw_run_csv(r);
  const std::string meta1 = cpvdw_run_sidecar_json(r);
  CHECK_FALSE(csv1.empty());
  CHECK(meta1.find("\"tool\"") != std::string::npos);
  CHECK(std::string(cpvdw_run_summary(r)).find("cp-sphere") !=
        std::string::npos);
  CHECK(std::string(cpvdw_run_error_name(r)).empty());

  // re-execute is deterministic
  REQUIRE(cpvdw_run_execute(r) == CPVDW_OK);
  CHECK(std::string(cpvdw_run_csv(r)) == csv1);
  CHECK(std::string(cpvdw_run_sidecar_json(r)) == meta1);

  SUBCASE("setters propagate") {
    CHECK(cpvdw_run_set_rel_tol(r, 1e-6) == CPVDW_OK);
    REQUIRE(cpvdw_run_execute(r) == CPVDW_OK);
    CHECK(std::string(cpvdw_run_sidecar_json(r)).find("1e-06") !=
          std::string::npos);
    CHECK(cpvdw_run_set_rel_tol(r, 0.0) == CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_run_set_rel_tol(r, 2.0) == CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_run_set_grid(r, 1) == CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_run_set_grid(r, 8) == CPVDW_OK);
    CHECK(cpvdw_run_set_monte_carlo(r, 1, 10) == CPVDW_ERR_INVALID_ARGUMENT);
    CHECK(cpvdw_run_set_monte_carlo(r, 1, 1000) == CPVDW_OK);
    CHECK(cpvdw_run_set_seed(r, 7) == CPVDW_OK);
  }

  SUBCASE("write outputs") {
    const std::string base = "capi_test_out.csv";
    REQUIRE(cpvdw_run_set_output_path(r, base.c_str()) == CPVDW_OK);
    REQUIRE(cpvdw_run_execute(r) == CPVDW_OK);
    REQUIRE(cpvdw_run_write_outputs(r) == CPVDW_OK);
    CHECK(read_file(base) == std::string(cpvdw_run_csv(r)));
    CHECK(read_file(base + ".meta.json") ==
          std::string(cpvdw_run_sidecar_json(r)));
    std::remove(base.c_str());
    std::remove((base + ".meta.json").c_str());
  }

  SUBCASE("problem override") {
    CHECK(cpvdw_run_set_problem(r, "bogus") == CPVDW_ERR_INVALID_ARGUMENT);
    REQUIRE(cpvdw_run_set_problem(r, "check") == CPVDW_OK);
    // config has no check section; execute reports the config error
    CHECK(cpvdw_run_execute(r) == CPVDW_ERR_CONFIG);
    CHECK(cpvdw_run_exit_code(r) == 2);
    CHECK(std::string(cpvdw_run_error_name(r)) == "ConfigError");
    CHECK(cpvdw_run_write_outputs(r) == CPVDW_ERR_INVALID_ARGUMENT);
  }

  cpvdw_run_destroy(r);
  cpvdw_run_destroy(nullptr);
}

TEST_CASE("run creation and execution failures") {
  CHECK(cpvdw_run_create("]]") == nullptr);
  CHECK(cpvdw_last_status() == CPVDW_ERR_CONFIG);

  cpvdw_run *r = cpvdw_run_create_from_file("/nonexistent/path.json");
  CHECK(r == nullptr);
  CHECK(cpvdw_last_status() == CPVDW_ERR_IO);
  CHECK(std::string(cpvdw_last_error()).find("cannot read") !=
        std::string::npos);

  // numerical failure: coincident atoms in a many-atom chain
  const char *bad = R"({
    "species": [{"name": "A", "oscillators": [{"omega": 1, "d2": 1.5}]}],
    "many_atom": {"atoms": [
      {"species": "A", "position": [0, 0, 0]},
      {"species": "A", "position": [0, 0, 0]}]},
    "problem": "many-atom"
  })";
  cpvdw_run *nr = cpvdw_run_create(bad);
  REQUIRE(nr != nullptr);
  CHECK(cpvdw_run_execute(nr) == CPVDW_ERR_NUMERICAL);
  CHECK(cpvdw_run_exit_code(nr) == 3);
  CHECK(std::string(cpvdw_run_error_name(nr)) == "CoincidentPoints");
  cpvdw_run_destroy(nr);
}
