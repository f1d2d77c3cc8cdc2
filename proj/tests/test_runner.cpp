#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "runner.hpp"

using namespace cpvdw;

namespace {

// split a CSV document into cells
std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int column_index(const std::vector<std::string> &header,
                 const std::string &name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name)
      return static_cast<int>(i);
  return -1;
}

const char *kBaseConfig = R"({
  "species": [{"name": "A", "oscillators": [{"omega": 1.0, "d2": 1.5}]}],
  "media": [{"name": "glass",
             "eps_poles": [{"omega_p": 1.0, "omega_t": 1.0}]}],
  "cp_sphere": {
    "atom": {"species": "A", "position": [0, 0, 12.0]},
    "sphere": {"radius": 1.0, "medium": "glass", "center": [0, 0, 0]}
  },
  "problem": "cp-sphere"
})";

} // namespace

TEST_CASE("config parsing: defaults and validation") {
  RunConfig cfg = parse_config(kBaseConfig);
  CHECK(cfg.problem == "cp-sphere");
  CHECK(cfg.species.count("A") == 1);
  CHECK(cfg.media.count("glass") == 1);
  CHECK_FALSE(cfg.units.si_input);
  CHECK(cfg.quadrature.rel_tol == doctest::Approx(1e-9));
  CHECK(cfg.grid.nodes_per_axis == 8);
  CHECK(default_output_path(cfg) == "cp-sphere.csv");

  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);

  // unknown fields are rejected with a path
  try {
    parse_config(R"({"speciess": []})");
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("config.speciess") !=
          std::string::npos);
  }

  // unknown species reference
  CHECK_THROWS_AS(parse_config(R"({
    "species": [{"name": "A", "oscillators": [{"omega": 1, "d2": 1}]}],
    "cp_sphere": {"atom": {"species": "B", "position": [0,0,1]},
                   "sphere": {"radius": 0.1, "medium": "m"}}
  })"),
                  ConfigError);
}

TEST_CASE("single cp-sphere run and determinism") {
  RunConfig cfg = parse_config(kBaseConfig);
  RunOutput a = run(cfg);
  REQUIRE(a.ok);
  CHECK(a.exit_code == 0);
  RunOutput b = run(cfg);
  CHECK(a.csv == b.csv); // bit-identical
  CHECK(a.sidecar == b.sidecar);

  auto rows = parse_csv(a.csv);
  REQUIRE(rows.size() == 2);
  const int c_r = column_index(rows[0], "r_A");
  const int c_u = column_index(rows[0], "potential");
  const int c_regime = column_index(rows[0], "regime");
  REQUIRE(c_r >= 0);
  REQUIRE(c_u >= 0);
  REQUIRE(c_regime >= 0);
  CHECK(std::stod(rows[1][static_cast<std::size_t>(c_r)]) ==
        doctest::Approx(12.0));
  CHECK(std::stod(rows[1][static_cast<std::size_t>(c_u)]) < 0.0);
  CHECK(rows[1][static_cast<std::size_t>(c_regime)] == "retarded");
  CHECK(a.sidecar.find("\"tool\"") != std::string::npos);
  CHECK(a.sidecar.find("cp-sphere") != std::string::npos);
}

TEST_CASE("power-law crossover along a separation sweep") {
  // sphere small enough that the closest sweep point stays in the
  // long-wavelength regime of the geometry guard
  RunConfig cfg = parse_config(R"({
    "species": [{"name": "A", "oscillators": [{"omega": 1.0, "d2": 1.5}]}],
    "media": [{"name": "glass",
               "eps_poles": [{"omega_p": 1.0, "omega_t": 1.0}]}],
    "cp_sphere": {
      "atom": {"species": "A", "position": [0, 0, 12.0]},
      "sphere": {"radius": 5e-4, "medium": "glass", "center": [0, 0, 0]}
    },
    "problem": "cp-sphere"
  })");
  cfg.sweep = SweepSpec{"r_A", 0.01, 1000.0, 13, true};
  RunOutput out = run(cfg);
  REQUIRE(out.ok);
  auto rows = parse_csv(out.csv);
  REQUIRE(rows.size() == 14);
  const int c_r = column_index(rows[0], "r_A");
  const int c_u = column_index(rows[0], "potential");
  const int c_regime = column_index(rows[0], "regime");

  auto value = [&](std::size_t i, int c) {
    return std::stod(rows[i][static_cast<std::size_t>(c)]);
  };
  // local log-log slope between the first and second rows ~ -6
  const double s_near = (std::log(std::abs(value(2, c_u))) -
                         std::log(std::abs(value(1, c_u)))) /
                        (std::log(value(2, c_r)) - std::log(value(1, c_r)));
  CHECK(s_near == doctest::Approx(-6.0).epsilon(0.01));
  // slope between the last two rows ~ -7
  const std::size_t n = rows.size() - 1;
  const double s_far = (std::log(std::abs(value(n, c_u))) -
                        std::log(std::abs(value(n - 1, c_u)))) /
                       (std::log(value(n, c_r)) - std::log(value(n - 1, c_r)));
  CHECK(s_far == doctest::Approx(-7.0).epsilon(0.01));

  CHECK(rows[1][static_cast<std::size_t>(c_regime)] == "nonretarded");
  CHECK(rows[n][static_cast<std::size_t>(c_regime)] == "retarded");
  // endpoints are hit exactly
  CHECK(value(1, c_r) == 0.01);
  CHECK(value(n, c_r) == 1000.0);
}

TEST_CASE("SI and natural unit systems give the same physics") {
  RunConfig nat = parse_config(kBaseConfig);
  RunOutput nat_out = run(nat);
  REQUIRE(nat_out.ok);

  const double L0 = si::bohr_radius;
  const double c = si::speed_of_light;
  const double hbar = si::hbar;
  const double eps0 = si::vacuum_permittivity;
  std::ostringstream si_cfg;
  si_cfg.precision(17);
  si_cfg << R"({
    "units": "SI",
    "species": [{"name": "A", "oscillators": [{"omega": )"
         << 1.0 * c / L0 << R"(, "d2": )" << 1.5 * hbar * c * eps0 * L0 * L0
         << R"(}]}],
    "media": [{"name": "glass",
               "eps_poles": [{"omega_p": )"
         << 1.0 * c / L0 << R"(, "omega_t": )" << 1.0 * c / L0 << R"(}]}],
    "cp_sphere": {
      "atom": {"species": "A", "position": [0, 0, )"
         << 12.0 * L0 << R"(]},
      "sphere": {"radius": )"
         << 1.0 * L0 << R"(, "medium": "glass", "center": [0, 0, 0]}
    },
    "problem": "cp-sphere"
  })";
  RunConfig si_run = parse_config(si_cfg.str());
  CHECK(si_run.units.si_input);
  RunOutput si_out = run(si_run);
  REQUIRE(si_out.ok);

  auto nat_rows = parse_csv(nat_out.csv);
  auto si_rows = parse_csv(si_out.csv);
  const int c_r = column_index(nat_rows[0], "r_A");
  const int c_u = column_index(nat_rows[0], "potential");
  const double r_nat = std::stod(nat_rows[1][static_cast<std::size_t>(c_r)]);
  const double u_nat = std::stod(nat_rows[1][static_cast<std::size_t>(c_u)]);
  const double r_si = std::stod(si_rows[1][static_cast<std::size_t>(c_r)]);
  const double u_si = std::stod(si_rows[1][static_cast<std::size_t>(c_u)]);

  CHECK(r_si / L0 == doctest::Approx(r_nat).epsilon(1e-12));
  CHECK(u_si / (hbar * c / L0) == doctest::Approx(u_nat).epsilon(1e-12));
}

TEST_CASE("problem dispatch and error mapping") {
  SUBCASE("missing problem") {
    RunConfig cfg = parse_config(kBaseConfig);
    cfg.problem.clear();
    RunOutput out = run(cfg);
    CHECK_FALSE(out.ok);
    CHECK(out.exit_code == 2);
    CHECK(out.error_name == "ConfigError");
    CHECK(out.csv.empty());
  }

  SUBCASE("sweep variable mismatch") {
    RunConfig cfg = parse_config(kBaseConfig);
    cfg.sweep = SweepSpec{"r_AB", 1.0, 2.0, 3, false};
    RunOutput out = run(cfg);
    CHECK_FALSE(out.ok);
    CHECK(out.exit_code == 2);
  }

  SUBCASE("numerical domain error maps to exit 3") {
    RunConfig cfg = parse_config(R"({
      "species": [{"name": "A", "oscillators": [{"omega": 1, "d2": 1.5}]}],
      "many_atom": {"atoms": [
        {"species": "A", "position": [0, 0, 0]},
        {"species": "A", "position": [0, 0, 0]}]},
      "problem": "many-atom"
    })");
    RunOutput out = run(cfg);
    CHECK_FALSE(out.ok);
    CHECK(out.exit_code == 3);
    CHECK(out.error_name == "CoincidentPoints");
  }
}

TEST_CASE("vdw-pair and many-atom problems through the runner") {
  const char *cfg_text = R"({
    "species": [{"name": "A", "oscillators": [{"omega": 1.0, "d2": 1.5}]}],
    "vdw_pair": {"atom_a": {"species": "A", "position": [0, 0, 0]},
                  "atom_b": {"species": "A", "position": [0, 0, 2.0]}},
    "many_atom": {"atoms": [
      {"species": "A", "position": [0, 0, 0]},
      {"species": "A", "position": [0, 0, 2.0]}]},
    "problem": "vdw-pair"
  })";
  RunConfig cfg = parse_config(cfg_text);
  RunOutput pair = run(cfg);
  REQUIRE(pair.ok);

  cfg.problem = "many-atom";
  RunOutput many = run(cfg);
  REQUIRE(many.ok);

  auto prow = parse_csv(pair.csv);
  auto mrow = parse_csv(many.csv);
  const double up =
      std::stod(prow[1][static_cast<std::size_t>(
          column_index(prow[0], "potential"))]);
  const double um =
      std::stod(mrow[1][static_cast<std::size_t>(
          column_index(mrow[0], "potential"))]);
  CHECK(up == doctest::Approx(um).epsilon(1e-10));
}

TEST_CASE("check problem reports composition gates") {
  const char *cfg_text = R"({
    "species": [{"name": "A", "oscillators": [{"omega": 1.0, "d2": 1.5}]}],
    "bodies": [
      {"name": "ok_ball",
       "geometry": {"type": "sphere", "center": [0, 0, 0], "radius": 1.0},
       "composition": [{"species": "A", "density": 0.05}]},
      {"name": "dense_ball",
       "geometry": {"type": "sphere", "center": [0, 0, 0], "radius": 1.0},
       "composition": [{"species": "A", "density": 3.5}]}
    ],
    "problem": "check"
  })";
  RunConfig cfg = parse_config(cfg_text);
  cfg.check = CheckProblem{};
  RunOutput out = run(cfg);
  REQUIRE(out.ok);
  auto rows = parse_csv(out.csv);
  REQUIRE(rows.size() == 3); // header + 2 bodies
  const int c_name = column_index(rows[0], "body");
  const int c_conv = column_index(rows[0], "convergence_ok");
  const int c_denom = column_index(rows[0], "denominator_ok");
  CHECK(rows[1][static_cast<std::size_t>(c_name)] == "dense_ball");
  CHECK(rows[1][static_cast<std::size_t>(c_conv)] == "0");
  CHECK(rows[1][static_cast<std::size_t>(c_denom)] == "0");
  CHECK(rows[2][static_cast<std::size_t>(c_name)] == "ok_ball");
  CHECK(rows[2][static_cast<std::size_t>(c_conv)] == "1");
  CHECK(rows[2][static_cast<std::size_t>(c_denom)] == "1");
}

TEST_CASE("born and micro problems with a density sweep") {
  const char *cfg_text = R"({
    "species": [{"name": "A", "oscillators": [{"omega": 1.0, "d2": 1.5}]}],
    "bodies": [
      {"name": "ball",
       "geometry": {"type": "sphere", "center": [0, 0, 0], "radius": 1.0},
       "composition": [{"species": "A", "density": 0.05}]}
    ],
    "born": {"atom": {"species": "A", "position": [0, 0, 3.0]},
              "body": "ball", "k": 1, "chi": "dilute"},
    "micro": {"atom": {"species": "A", "position": [0, 0, 3.0]},
               "body": "ball", "l": 1},
    "grid": {"nodes_per_axis": 4},
    "sweep": {"variable": "density_scale", "min": 1.0, "max": 2.0,
               "points": 2, "scale": "linear"},
    "problem": "born"
  })";
  RunConfig cfg = parse_config(cfg_text);
  RunOutput born = run(cfg);
  REQUIRE(born.ok);
  cfg.problem = "micro";
  RunOutput micro = run(cfg);
  REQUIRE(micro.ok);

  auto brows = parse_csv(born.csv);
  auto mrows = parse_csv(micro.csv);
  REQUIRE(brows.size() == 3);
  REQUIRE(mrows.size() == 3);
  const int bc = column_index(brows[0], "potential");
  const int mc = column_index(mrows[0], "potential");
  for (std::size_t i = 1; i <= 2; ++i) {
    const double bv = std::stod(brows[i][static_cast<std::size_t>(bc)]);
    const double mv = std::stod(mrows[i][static_cast<std::size_t>(mc)]);
    // dilute first order coincides with the pair sum at any density
    CHECK(bv == doctest::Approx(mv).epsilon(1e-12));
  }
  // first-order term is linear in density: scale 2 doubles it
  const double b1 = std::stod(brows[1][static_cast<std::size_t>(bc)]);
  const double b2 = std::stod(brows[2][static_cast<std::size_t>(bc)]);
  CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-12));
}
