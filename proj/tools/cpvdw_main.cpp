// Command-line front end.  Deliberately thin: everything flows through
// the C API so the CLI exercises the same surface as external callers.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <cpvdw.h>

namespace {

struct Options {
  std::string config;
  std::string out;
  double rel_tol = 0.0; // 0: keep the config value
  int grid = 0;
  long long seed = -1;
  bool mc = false;
  long mc_samples = 100000;
};

void add_common(CLI::App *sub, Options &o) {
  sub->add_option("--config", o.config, "problem description (JSON)")
      ->required();
  sub->add_option("--out", o.out, "output CSV path (sidecar: <out>.meta.json)");
  sub->add_option("--rel-tol", o.rel_tol,
                  "frequency-integral relative tolerance override");
  sub->add_option("--grid", o.grid, "volume grid nodes per axis override");
  sub->add_option("--seed", o.seed, "Monte Carlo seed override");
  sub->add_flag("--mc", o.mc, "sample body volumes by Monte Carlo");
  sub->add_option("--mc-samples", o.mc_samples,
                  "Monte Carlo sample count (with --mc)");
}

int status_to_exit(cpvdw_status s) {
  switch (s) {
  case CPVDW_OK:
    return 0;
  case CPVDW_ERR_CONFIG:
  case CPVDW_ERR_INVALID_ARGUMENT:
    return 2;
  case CPVDW_ERR_NUMERICAL:
    return 3;
  default:
    return 1;
  }
}

int run_problem(const std::string &problem, const Options &o) {
  cpvdw_run *r = cpvdw_run_create_from_file(o.config.c_str());
  if (!r) {
    std::cerr << "error: " << cpvdw_last_error() << "\n";
    return status_to_exit(cpvdw_last_status());
  }

  auto fail_setup = [&](const char *what) {
    std::cerr << "error: " << what << ": " << cpvdw_last_error() << "\n";
    cpvdw_run_destroy(r);
    return 2;
  };

  if (cpvdw_run_set_problem(r, problem.c_str()) != CPVDW_OK)
    return fail_setup("--problem");
  if (o.rel_tol != 0.0 && cpvdw_run_set_rel_tol(r, o.rel_tol) != CPVDW_OK)
    return fail_setup("--rel-tol");
  if (o.grid != 0 && cpvdw_run_set_grid(r, o.grid) != CPVDW_OK)
    return fail_setup("--grid");
  if (o.seed >= 0 &&
      cpvdw_run_set_seed(r, static_cast<unsigned long long>(o.seed)) !=
          CPVDW_OK)
    return fail_setup("--seed");
  if (o.mc && cpvdw_run_set_monte_carlo(r, 1, o.mc_samples) != CPVDW_OK)
    return fail_setup("--mc");
  if (!o.out.empty() && cpvdw_run_set_output_path(r, o.out.c_str()) !=
                            CPVDW_OK)
    return fail_setup("--out");

  cpvdw_status st = cpvdw_run_execute(r);
  if (st != CPVDW_OK) {
    std::cerr << "error: " << cpvdw_run_error_name(r) << ": "
              << cpvdw_run_error(r) << "\n";
    int code = cpvdw_run_exit_code(r);
    cpvdw_run_destroy(r);
    return code;
  }

  if (cpvdw_run_write_outputs(r) != CPVDW_OK) {
    std::cerr << "error: " << cpvdw_last_error() << "\n";
    cpvdw_run_destroy(r);
    return 1;
  }

  std::cout << cpvdw_run_summary(r) << "\n";
  std::cout << "wrote " << cpvdw_run_output_path(r) << " and "
            << cpvdw_run_output_path(r) << ".meta.json\n";
  cpvdw_run_destroy(r);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{std::string("dispersion potentials from imaginary-frequency "
                           "response functions (v") +
               cpvdw_version() + ")"};
  app.require_subcommand(1);

  struct Sub {
    const char *name;
    const char *desc;
  };
  const Sub subs[] = {
      {"cp-sphere", "atom near a small homogeneous sphere"},
      {"vdw-pair", "two ground-state atoms, vacuum or bulk background"},
      {"many-atom", "irreducible interaction of 2 to 5 atoms"},
      {"born", "scattering-series term of order k against a body"},
      {"micro", "microscopic cluster sum of order l against a body"},
      {"verify", "scattering series vs cluster sums on refining grids"},
      {"check", "composition gates: convergence, local field, packing"},
  };

  Options opts;
  std::string chosen;
  for (const Sub &s : subs) {
    CLI::App *sub = app.add_subcommand(s.name, s.desc);
    add_common(sub, opts);
    sub->callback([&chosen, name = std::string(s.name)]() { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run_problem(chosen, opts);
}
