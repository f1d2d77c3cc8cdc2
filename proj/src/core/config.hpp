#ifndef CPVDW_CONFIG_HPP
#define CPVDW_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "born.hpp"
#include "geometry.hpp"
#include "potentials.hpp"
#include "units.hpp"

namespace cpvdw {

struct SweepSpec {
  std::string variable; // r_A | r_AB | scale | density_scale
  double min_value = 0.0;
  double max_value = 0.0;
  int points = 2;
  bool log_scale = true;
};

struct GridSpec {
  int nodes_per_axis = 8;
  double delta_excl = 0.0;
  bool monte_carlo = false;
  long mc_samples = 100000;
  std::uint64_t seed = 12345;
};

struct CpSphereProblem {
  AtomAt atom;
  SmallSphere sphere;
};

struct VdwPairProblem {
  AtomAt a, b;
  Background bg;
  bool use_bulk_form = false; // radial-profile route instead of the dyadic one
};

struct ManyAtomProblem {
  std::vector<AtomAt> atoms;
  Background bg;
};

struct BornProblem {
  AtomAt atom;
  std::string body;
  int k = 1;
  Background bg;
  ChiMode mode = ChiMode::clausius_mosotti;
};

struct MicroProblem {
  AtomAt atom;
  std::string body;
  int l = 1;
  Background bg;
};

struct VerifyProblem {
  AtomAt atom;
  std::string body;
  VerifyOrders orders;
  std::vector<int> refinements{5, 6, 8};
  double tolerance = 0.005;
};

struct CheckProblem {
  std::string body; // empty: all bodies
  double packing_factor = 1.5;
};

// A full run description in natural units.  `echo` keeps the raw config
// for the provenance sidecar.
struct RunConfig {
  UnitSystem units;
  std::map<std::string, AtomSpecies> species;
  std::map<std::string, MediumModel> media;
  std::map<std::string, BodySpec> bodies;

  std::string problem; // may be empty until the CLI picks a subcommand

  std::optional<CpSphereProblem> cp_sphere;
  std::optional<VdwPairProblem> vdw_pair;
  std::optional<ManyAtomProblem> many_atom;
  std::optional<BornProblem> born;
  std::optional<MicroProblem> micro;
  std::optional<VerifyProblem> verify;
  std::optional<CheckProblem> check;

  std::optional<SweepSpec> sweep;
  QuadratureSpec quadrature;
  GridSpec grid;
  std::string output_path; // empty: "<problem>.csv"

  nlohmann::json echo;
};

// Parses and validates a config document.  Throws ConfigError with a
// field path on schema violations.
RunConfig parse_config(const std::string &json_text);

} // namespace cpvdw

#endif
