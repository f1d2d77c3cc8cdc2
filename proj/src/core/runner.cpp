#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <json.hpp>

#include "born.hpp"
#include "errors.hpp"
#include "potentials.hpp"
#include "response.hpp"

namespace cpvdw {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string safe_token(std::string s) {
  for (char &c : s)
    if (c == ',' || c == '\n' || c == '\r')
      c = ';';
  return s;
}

struct Table {
  std::vector<std::string> columns;
  std::string body;

  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto &c : cells) {
      if (!first)
        body += ',';
      body += c;
      first = false;
    }
    body += '\n';
  }

  std::string str() const {
    std::string out;
    bool first = true;
    for (const auto &c : columns) {
      if (!first)
        out += ',';
      out += c;
      first = false;
    }
    out += '\n';
    out += body;
    return out;
  }
};

const char *regime_name(double x) {
  if (x < 0.1)
    return "nonretarded";
  if (x > 10.0)
    return "retarded";
  return "intermediate";
}

std::vector<double> sweep_values(const SweepSpec &s) {
  std::vector<double> v(static_cast<std::size_t>(s.points));
  const int n = s.points;
  if (s.log_scale) {
    const double la = std::log(s.min_value), lb = std::log(s.max_value);
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] =
          std::exp(la + (lb - la) * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] =
          s.min_value + (s.max_value - s.min_value) * i / (n - 1);
  }
  v.front() = s.min_value;
  v.back() = s.max_value;
  return v;
}

void require_sweep_variable(const RunConfig &cfg, const char *expected) {
  if (!cfg.sweep)
    return;
  if (!expected)
    throw ConfigError("config.sweep: problem '" + cfg.problem +
                      "' does not sweep");
  if (cfg.sweep->variable != expected)
    throw ConfigError("config.sweep.variable: problem '" + cfg.problem +
                      "' sweeps over " + expected);
}

BornSpec make_born_spec(const RunConfig &cfg) {
  BornSpec s;
  s.quad = cfg.quadrature;
  s.grid_n = cfg.grid.nodes_per_axis;
  s.delta_excl = cfg.grid.delta_excl;
  s.monte_carlo = cfg.grid.monte_carlo;
  s.mc_samples = cfg.grid.mc_samples;
  s.seed = cfg.grid.seed;
  return s;
}

Vec3 unit_direction(const Vec3 &from, const Vec3 &to, const char *path) {
  Vec3 d = to - from;
  double n = norm(d);
  if (n < kMinSeparation)
    throw ConfigError(std::string(path) +
                      ": sweep direction undefined (coincident points)");
  return (1.0 / n) * d;
}

struct ProblemResult {
  Table table;
  std::string summary;
  json extra; // merged into the sidecar
  bool warned = false;
};

ProblemResult run_cp_sphere(const RunConfig &cfg) {
  if (!cfg.cp_sphere)
    throw ConfigError("config.cp_sphere: missing for problem 'cp-sphere'");
  require_sweep_variable(cfg, "r_A");
  const CpSphereProblem &pr = *cfg.cp_sphere;
  const UnitSystem &un = cfg.units;

  const AtomSpecies sp[] = {pr.atom.species};
  const MediumModel md[] = {pr.sphere.medium};
  const double omega_char = characteristic_frequency(sp, md);

  ProblemResult res;
  res.table.columns = {"r_A",    "potential", "error_estimate",
                       "retardation_x", "regime",    "evals",
                       "converged",     "warning"};

  std::vector<double> rs;
  if (cfg.sweep) {
    rs = sweep_values(*cfg.sweep);
  } else {
    rs.push_back(norm(pr.atom.position - pr.sphere.center));
  }
  Vec3 dir{0.0, 0.0, 1.0};
  if (cfg.sweep)
    dir = unit_direction(pr.sphere.center, pr.atom.position,
                         "config.cp_sphere.atom.position");

  double last_value = 0.0;
  const char *last_regime = "";
  for (double r : rs) {
    AtomAt atom = pr.atom;
    if (cfg.sweep)
      atom.position = pr.sphere.center + r * dir;
    QuadResult q = cp_sphere(atom, pr.sphere, cfg.quadrature);
    const double x = r * omega_char;
    res.table.row({num(un.length_out(r)), num(un.energy_out(q.value)),
                   num(un.energy_out(q.error_estimate)), num(x),
                   regime_name(x), std::to_string(q.evals),
                   q.converged ? "1" : "0", q.warning ? "1" : "0"});
    res.warned = res.warned || q.warning || !q.converged;
    last_value = un.energy_out(q.value);
    last_regime = regime_name(x);
  }
  if (cfg.sweep) {
    res.summary = "cp-sphere: " + std::to_string(rs.size()) +
                  " separations in [" + num(un.length_out(rs.front())) +
                  ", " + num(un.length_out(rs.back())) + "] " +
                  un.length_unit_name();
  } else {
    res.summary = std::string("cp-sphere: U = ") + num(last_value) + " " +
                  un.energy_unit_name() + " at r_A = " +
                  num(un.length_out(rs.front())) + " " +
                  un.length_unit_name() + " (" + last_regime + ")";
  }
  res.extra["retardation"] = {{"omega_char", omega_char},
                              {"thresholds", {0.1, 10.0}}};
  return res;
}

ProblemResult run_vdw_pair(const RunConfig &cfg) {
  if (!cfg.vdw_pair)
    throw ConfigError("config.vdw_pair: missing for problem 'vdw-pair'");
  require_sweep_variable(cfg, "r_AB");
  const VdwPairProblem &pr = *cfg.vdw_pair;
  const UnitSystem &un = cfg.units;

  std::vector<AtomSpecies> sp{pr.a.species, pr.b.species};
  std::vector<MediumModel> md;
  if (pr.bg.kind == Background::Kind::bulk)
    md.push_back(pr.bg.medium);
  const double omega_char = characteristic_frequency(sp, md);

  ProblemResult res;
  res.table.columns = {"r_AB",   "potential", "error_estimate",
                       "retardation_x", "regime",    "evals",
                       "converged",     "warning"};

  std::vector<double> rs;
  if (cfg.sweep)
    rs = sweep_values(*cfg.sweep);
  else
    rs.push_back(norm(pr.b.position - pr.a.position));
  Vec3 dir{0.0, 0.0, 1.0};
  if (cfg.sweep)
    dir = unit_direction(pr.a.position, pr.b.position,
                         "config.vdw_pair.atom_b.position");

  double last_value = 0.0;
  const char *last_regime = "";
  for (double r : rs) {
    AtomAt b = pr.b;
    if (cfg.sweep)
      b.position = pr.a.position + r * dir;
    QuadResult q = pr.use_bulk_form
                       ? vdw_pair_bulk(pr.a, b, pr.bg.medium, cfg.quadrature)
                       : vdw_pair_general(pr.a, b, pr.bg, cfg.quadrature);
    const double x = r * omega_char;
    res.table.row({num(un.length_out(r)), num(un.energy_out(q.value)),
                   num(un.energy_out(q.error_estimate)), num(x),
                   regime_name(x), std::to_string(q.evals),
                   q.converged ? "1" : "0", q.warning ? "1" : "0"});
    res.warned = res.warned || q.warning || !q.converged;
    last_value = un.energy_out(q.value);
    last_regime = regime_name(x);
  }
  if (cfg.sweep) {
    res.summary = "vdw-pair: " + std::to_string(rs.size()) +
                  " separations in [" + num(un.length_out(rs.front())) +
                  ", " + num(un.length_out(rs.back())) + "] " +
                  un.length_unit_name();
  } else {
    res.summary = std::string("vdw-pair: U = ") + num(last_value) + " " +
                  un.energy_unit_name() + " at r_AB = " +
                  num(un.length_out(rs.front())) + " " +
                  un.length_unit_name() + " (" + last_regime + ")";
  }
  res.extra["retardation"] = {{"omega_char", omega_char},
                              {"thresholds", {0.1, 10.0}}};
  res.extra["method"] = pr.use_bulk_form ? "bulk" : "general";
  return res;
}

ProblemResult run_many_atom(const RunConfig &cfg) {
  if (!cfg.many_atom)
    throw ConfigError("config.many_atom: missing for problem 'many-atom'");
  require_sweep_variable(cfg, "scale");
  const ManyAtomProblem &pr = *cfg.many_atom;
  const UnitSystem &un = cfg.units;

  Vec3 centroid{0.0, 0.0, 0.0};
  for (const AtomAt &a : pr.atoms)
    centroid = centroid + a.position;
  centroid = (1.0 / static_cast<double>(pr.atoms.size())) * centroid;

  ProblemResult res;
  res.table.columns = {"scale",     "n_atoms", "potential",
                       "error_estimate", "evals",   "converged"};

  std::vector<double> ss;
  if (cfg.sweep)
    ss = sweep_values(*cfg.sweep);
  else
    ss.push_back(1.0);

  double last_value = 0.0;
  for (double s : ss) {
    std::vector<AtomAt> atoms = pr.atoms;
    if (cfg.sweep)
      for (AtomAt &a : atoms)
        a.position = centroid + s * (a.position - centroid);
    QuadResult q = vdw_many_atom(atoms, pr.bg, cfg.quadrature);
    res.table.row({num(s), std::to_string(atoms.size()),
                   num(un.energy_out(q.value)),
                   num(un.energy_out(q.error_estimate)),
                   std::to_string(q.evals), q.converged ? "1" : "0"});
    res.warned = res.warned || !q.converged;
    last_value = un.energy_out(q.value);
  }
  if (cfg.sweep)
    res.summary = "many-atom: " + std::to_string(ss.size()) +
                  " geometry scales in [" + num(ss.front()) + ", " +
                  num(ss.back()) + "]";
  else
    res.summary = "many-atom: U(" + std::to_string(pr.atoms.size()) +
                  " atoms) = " + num(last_value) + " " +
                  un.energy_unit_name();
  return res;
}

BodySpec scaled_body(const BodySpec &body, double s) {
  BodySpec b = body;
  for (Component &c : b.composition)
    c.density *= s;
  return b;
}

ProblemResult run_born(const RunConfig &cfg) {
  if (!cfg.born)
    throw ConfigError("config.born: missing for problem 'born'");
  require_sweep_variable(cfg, "density_scale");
  const BornProblem &pr = *cfg.born;
  const UnitSystem &un = cfg.units;
  const BodySpec &body = cfg.bodies.at(pr.body);
  const BornSpec bspec = make_born_spec(cfg);

  ProblemResult res;
  res.table.columns = {"density_scale", "k", "potential", "error_estimate",
                       "evals", "converged"};
  std::vector<double> ss;
  if (cfg.sweep)
    ss = sweep_values(*cfg.sweep);
  else
    ss.push_back(1.0);

  double last_value = 0.0;
  for (double s : ss) {
    BodySpec b = scaled_body(body, s);
    QuadResult q = born_term(pr.atom, b, pr.bg, pr.k, bspec, pr.mode);
    res.table.row({num(s), std::to_string(pr.k), num(un.energy_out(q.value)),
                   num(un.energy_out(q.error_estimate)),
                   std::to_string(q.evals), q.converged ? "1" : "0"});
    res.warned = res.warned || !q.converged;
    last_value = un.energy_out(q.value);
  }
  if (cfg.sweep)
    res.summary = "born: order " + std::to_string(pr.k) + ", " +
                  std::to_string(ss.size()) + " density scales against '" +
                  pr.body + "'";
  else
    res.summary = "born: order " + std::to_string(pr.k) + " term = " +
                  num(last_value) + " " + un.energy_unit_name() +
                  " against '" + pr.body + "'";
  res.extra["chi"] =
      pr.mode == ChiMode::clausius_mosotti ? "clausius_mosotti" : "dilute";
  return res;
}

ProblemResult run_micro(const RunConfig &cfg) {
  if (!cfg.micro)
    throw ConfigError("config.micro: missing for problem 'micro'");
  require_sweep_variable(cfg, "density_scale");
  const MicroProblem &pr = *cfg.micro;
  const UnitSystem &un = cfg.units;
  const BodySpec &body = cfg.bodies.at(pr.body);
  const BornSpec bspec = make_born_spec(cfg);

  ProblemResult res;
  res.table.columns = {"density_scale", "l", "potential", "error_estimate",
                       "evals", "converged"};
  std::vector<double> ss;
  if (cfg.sweep)
    ss = sweep_values(*cfg.sweep);
  else
    ss.push_back(1.0);

  double last_value = 0.0;
  for (double s : ss) {
    BodySpec b = scaled_body(body, s);
    QuadResult q = micro_term(pr.atom, b, pr.l, bspec, pr.bg);
    res.table.row({num(s), std::to_string(pr.l), num(un.energy_out(q.value)),
                   num(un.energy_out(q.error_estimate)),
                   std::to_string(q.evals), q.converged ? "1" : "0"});
    res.warned = res.warned || !q.converged;
    last_value = un.energy_out(q.value);
  }
  if (cfg.sweep)
    res.summary = "micro: order " + std::to_string(pr.l) + ", " +
                  std::to_string(ss.size()) + " density scales against '" +
                  pr.body + "'";
  else
    res.summary = "micro: order " + std::to_string(pr.l) + " cluster sum = " +
                  num(last_value) + " " + un.energy_unit_name() +
                  " against '" + pr.body + "'";
  return res;
}

ProblemResult run_verify(const RunConfig &cfg) {
  if (!cfg.verify)
    throw ConfigError("config.verify: missing for problem 'verify'");
  require_sweep_variable(cfg, nullptr);
  const VerifyProblem &pr = *cfg.verify;
  const UnitSystem &un = cfg.units;
  const BodySpec &body = cfg.bodies.at(pr.body);
  const BornSpec bspec = make_born_spec(cfg);

  SeriesReport rep = verify_equivalence(pr.atom, body, bspec, pr.orders,
                                        pr.refinements, pr.tolerance);

  ProblemResult res;
  res.table.columns = {"grid_n",      "delta1",        "delta2",
                       "delta21",     "delta22",       "micro1",
                       "micro2",      "macro_total",   "micro_total",
                       "rel_discrepancy", "excluded_measure"};
  for (const RefinementRow &r : rep.rows)
    res.table.row({std::to_string(r.grid_n), num(un.energy_out(r.delta1)),
                   num(un.energy_out(r.delta2)),
                   num(un.energy_out(r.delta21)),
                   num(un.energy_out(r.delta22)),
                   num(un.energy_out(r.micro1)),
                   num(un.energy_out(r.micro2)),
                   num(un.energy_out(r.macro_total)),
                   num(un.energy_out(r.micro_total)),
                   num(r.rel_discrepancy), num(r.excluded_measure)});

  res.extra["report"] = json::parse(series_report_json(rep));
  res.summary = std::string("verify: extrapolated relative discrepancy ") +
                num(rep.extrapolated_discrepancy) + " vs tolerance " +
                num(std::max(rep.tolerance, rep.residual_tail_bound)) +
                (rep.passed ? ": PASSED" : ": FAILED");
  res.warned = !rep.passed;
  return res;
}

ProblemResult run_check(const RunConfig &cfg) {
  if (!cfg.check)
    throw ConfigError("config.check: missing for problem 'check'");
  require_sweep_variable(cfg, nullptr);
  const CheckProblem &pr = *cfg.check;

  std::vector<const BodySpec *> bodies;
  if (!pr.body.empty()) {
    bodies.push_back(&cfg.bodies.at(pr.body));
  } else {
    if (cfg.bodies.empty())
      throw ConfigError("config.bodies: check needs at least one body");
    for (const auto &kv : cfg.bodies)
      bodies.push_back(&kv.second);
  }

  ProblemResult res;
  res.table.columns = {"body",       "sigma0",        "t0",
                       "chi0",       "q0",            "convergence_margin",
                       "convergence_ok", "denominator_ok", "packing_ratio",
                       "packing_threshold", "packing_ok", "packing_marginal"};

  int failures = 0;
  const double a_bohr = cfg.units.bohr_radius_natural();
  for (const BodySpec *bp : bodies) {
    const Composition &comp = bp->composition;
    const double sigma0 = density_polarizability_sum(comp, 0.0);
    const double t0 = sigma0 / 3.0;
    const bool denom_ok = t0 < 1.0;
    const double chi0 =
        denom_ok ? clausius_mosotti(comp, 0.0)
                 : std::numeric_limits<double>::quiet_NaN();
    const double q0 = denom_ok ? q_factor(comp, 0.0)
                               : std::numeric_limits<double>::quiet_NaN();
    const ConvergenceReport conv = check_convergence(comp);
    const PackingReport pack =
        packing_diagnostic(comp, pr.packing_factor, a_bohr);
    if (!denom_ok || !conv.passes || !pack.satisfied)
      ++failures;
    res.table.row({safe_token(bp->name), num(sigma0), num(t0), num(chi0),
                   num(q0), num(conv.margin), conv.passes ? "1" : "0",
                   denom_ok ? "1" : "0", num(pack.ratio), num(pack.threshold),
                   pack.satisfied ? "1" : "0", pack.marginal ? "1" : "0"});
  }
  res.summary = "check: " + std::to_string(bodies.size()) + " body(ies), " +
                (failures == 0 ? std::string("all gates passed")
                               : std::to_string(failures) +
                                     " with failing gates");
  res.warned = failures != 0;
  res.extra["packing_factor"] = pr.packing_factor;
  return res;
}

} // namespace

int exit_code_for(const std::exception &e) {
  if (dynamic_cast<const ConfigError *>(&e) ||
      dynamic_cast<const InvalidArgument *>(&e))
    return 2;
  if (dynamic_cast<const IoError *>(&e))
    return 1;
  if (dynamic_cast<const Error *>(&e))
    return 3;
  return 1;
}

std::string default_output_path(const RunConfig &cfg) {
  if (!cfg.output_path.empty())
    return cfg.output_path;
  return (cfg.problem.empty() ? std::string("run") : cfg.problem) + ".csv";
}

RunOutput run(const RunConfig &cfg) {
  RunOutput out;
  try {
    if (cfg.problem.empty())
      throw ConfigError("config.problem: missing (set it in the config or "
                        "pick a subcommand)");

    ProblemResult pres;
    if (cfg.problem == "cp-sphere")
      pres = run_cp_sphere(cfg);
    else if (cfg.problem == "vdw-pair")
      pres = run_vdw_pair(cfg);
    else if (cfg.problem == "many-atom")
      pres = run_many_atom(cfg);
    else if (cfg.problem == "born")
      pres = run_born(cfg);
    else if (cfg.problem == "micro")
      pres = run_micro(cfg);
    else if (cfg.problem == "verify")
      pres = run_verify(cfg);
    else if (cfg.problem == "check")
      pres = run_check(cfg);
    else
      throw ConfigError("config.problem: unknown problem '" + cfg.problem +
                        "'");

    json side;
    side["tool"] = kToolName;
    side["version"] = kToolVersion;
    side["problem"] = cfg.problem;
    side["columns"] = pres.table.columns;
    side["units"] = {{"mode", cfg.units.si_input ? "SI" : "natural"},
                     {"length", cfg.units.length_unit_name()},
                     {"energy", cfg.units.energy_unit_name()},
                     {"reference_length_m", cfg.units.reference_length_m}};
    side["quadrature"] = {
        {"rel_tol", cfg.quadrature.rel_tol},
        {"abs_tol", cfg.quadrature.abs_tol},
        {"max_evals", cfg.quadrature.max_evals},
        {"u0", cfg.quadrature.u0},
        {"u_nodes", cfg.quadrature.u_nodes},
        {"rule", cfg.quadrature.rule == QuadratureSpec::Rule::adaptive_gk15
                     ? "adaptive_gk"
                     : "composite_gl"}};
    if (cfg.problem == "born" || cfg.problem == "micro" ||
        cfg.problem == "verify")
      side["grid"] = {{"nodes_per_axis", cfg.grid.nodes_per_axis},
                      {"delta_excl", cfg.grid.delta_excl},
                      {"monte_carlo", cfg.grid.monte_carlo},
                      {"mc_samples", cfg.grid.mc_samples},
                      {"seed", cfg.grid.seed}};
    if (cfg.sweep)
      side["sweep"] = {{"variable", cfg.sweep->variable},
                       {"min", cfg.sweep->min_value},
                       {"max", cfg.sweep->max_value},
                       {"points", cfg.sweep->points},
                       {"scale", cfg.sweep->log_scale ? "log" : "linear"}};
    else
      side["sweep"] = nullptr;
    side["warned"] = pres.warned;
    side["summary"] = pres.summary;
    for (auto it = pres.extra.begin(); it != pres.extra.end(); ++it)
      side[it.key()] = it.value();
    side["config"] = cfg.echo;

    out.csv = pres.table.str();
    out.sidecar = side.dump(2) + "\n";
    out.summary = pres.summary;
    out.ok = true;
    out.exit_code = 0;
  } catch (const Error &e) {
    out.ok = false;
    out.error_name = e.name();
    out.error_message = e.what();
    out.exit_code = exit_code_for(e);
  } catch (const std::exception &e) {
    out.ok = false;
    out.error_name = "InternalError";
    out.error_message = e.what();
    out.exit_code = 1;
  }
  return out;
}

} // namespace cpvdw
