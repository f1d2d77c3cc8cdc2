#include "cpvdw.h"

#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "response.hpp"
#include "runner.hpp"

using namespace cpvdw;

namespace {

thread_local std::string g_last_error;
thread_local cpvdw_status g_last_status = CPVDW_OK;

cpvdw_status status_of(const std::exception &e) {
  if (dynamic_cast<const InvalidArgument *>(&e))
    return CPVDW_ERR_INVALID_ARGUMENT;
  if (dynamic_cast<const ConfigError *>(&e))
    return CPVDW_ERR_CONFIG;
  if (dynamic_cast<const IoError *>(&e))
    return CPVDW_ERR_IO;
  if (dynamic_cast<const Error *>(&e))
    return CPVDW_ERR_NUMERICAL;
  return CPVDW_ERR_INTERNAL;
}

cpvdw_status record(const std::exception &e) {
  g_last_status = status_of(e);
  if (auto *err = dynamic_cast<const Error *>(&e))
    g_last_error = std::string(err->name()) + ": " + err->what();
  else
    g_last_error = e.what();
  return g_last_status;
}

cpvdw_status record_invalid(const std::string &msg) {
  g_last_status = CPVDW_ERR_INVALID_ARGUMENT;
  g_last_error = msg;
  return g_last_status;
}

cpvdw_status record_unknown(const char *kind, const char *name) {
  return record_invalid(std::string("unknown ") + kind + " '" + name + "'");
}

const Composition *find_body(const RunConfig &cfg, const char *body) {
  auto it = cfg.bodies.find(body);
  return it == cfg.bodies.end() ? nullptr : &it->second.composition;
}

} // namespace

struct cpvdw_model {
  RunConfig cfg;
};

struct cpvdw_run {
  RunConfig cfg;
  RunOutput out;
  bool executed = false;
  std::string path_override;
  std::string resolved_path;
};

extern "C" {

const char *cpvdw_version(void) { return kToolVersion; }

const char *cpvdw_status_name(cpvdw_status s) {
  switch (s) {
  case CPVDW_OK:
    return "ok";
  case CPVDW_ERR_INVALID_ARGUMENT:
    return "invalid_argument";
  case CPVDW_ERR_CONFIG:
    return "config";
  case CPVDW_ERR_NUMERICAL:
    return "numerical";
  case CPVDW_ERR_IO:
    return "io";
  case CPVDW_ERR_INTERNAL:
    return "internal";
  }
  return "unknown";
}

const char *cpvdw_last_error(void) { return g_last_error.c_str(); }

cpvdw_status cpvdw_last_status(void) { return g_last_status; }

/* ---------------- response model ---------------- */

cpvdw_model *cpvdw_model_create(const char *config_json) {
  if (!config_json) {
    record_invalid("config_json is null");
    return nullptr;
  }
  try {
    auto *m = new cpvdw_model{parse_config(config_json)};
    g_last_status = CPVDW_OK;
    g_last_error.clear();
    return m;
  } catch (const std::exception &e) {
    record(e);
    return nullptr;
  }
}

void cpvdw_model_destroy(cpvdw_model *m) { delete m; }

cpvdw_status cpvdw_model_polarizability(const cpvdw_model *m,
                                        const char *species, double u,
                                        double *out) {
  if (!m || !species || !out)
    return record_invalid("null argument");
  try {
    auto it = m->cfg.species.find(species);
    if (it == m->cfg.species.end())
      return record_unknown("species", species);
    *out = polarizability(it->second, u);
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

cpvdw_status cpvdw_model_permittivity(const cpvdw_model *m, const char *medium,
                                      double u, double *out) {
  if (!m || !medium || !out)
    return record_invalid("null argument");
  try {
    auto it = m->cfg.media.find(medium);
    if (it == m->cfg.media.end())
      return record_unknown("medium", medium);
    *out = permittivity(it->second, u);
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

cpvdw_status cpvdw_model_permeability(const cpvdw_model *m, const char *medium,
                                      double u, double *out) {
  if (!m || !medium || !out)
    return record_invalid("null argument");
  try {
    auto it = m->cfg.media.find(medium);
    if (it == m->cfg.media.end())
      return record_unknown("medium", medium);
    *out = permeability(it->second, u);
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

cpvdw_status cpvdw_model_susceptibility(const cpvdw_model *m, const char *body,
                                        double u, double *out) {
  if (!m || !body || !out)
    return record_invalid("null argument");
  try {
    const Composition *c = find_body(m->cfg, body);
    if (!c)
      return record_unknown("body", body);
    *out = clausius_mosotti(*c, u);
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

cpvdw_status cpvdw_model_q_factor(const cpvdw_model *m, const char *body,
                                  double u, double *out) {
  if (!m || !body || !out)
    return record_invalid("null argument");
  try {
    const Composition *c = find_body(m->cfg, body);
    if (!c)
      return record_unknown("body", body);
    *out = q_factor(*c, u);
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

cpvdw_status cpvdw_model_convergence_margin(const cpvdw_model *m,
                                            const char *body, double *out) {
  if (!m || !body || !out)
    return record_invalid("null argument");
  try {
    const Composition *c = find_body(m->cfg, body);
    if (!c)
      return record_unknown("body", body);
    *out = check_convergence(*c).margin;
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

cpvdw_status cpvdw_model_packing_ratio(const cpvdw_model *m, const char *body,
                                       double factor, double *ratio,
                                       double *threshold) {
  if (!m || !body || !ratio || !threshold)
    return record_invalid("null argument");
  if (!(factor > 1.0))
    return record_invalid("factor must be greater than 1");
  try {
    const Composition *c = find_body(m->cfg, body);
    if (!c)
      return record_unknown("body", body);
    PackingReport r =
        packing_diagnostic(*c, factor, m->cfg.units.bohr_radius_natural());
    *ratio = r.ratio;
    *threshold = r.threshold;
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

/* ---------------- problem runs ---------------- */

cpvdw_run *cpvdw_run_create(const char *config_json) {
  if (!config_json) {
    record_invalid("config_json is null");
    return nullptr;
  }
  try {
    auto *r = new cpvdw_run{};
    r->cfg = parse_config(config_json);
    g_last_status = CPVDW_OK;
    g_last_error.clear();
    return r;
  } catch (const std::exception &e) {
    record(e);
    return nullptr;
  }
}

cpvdw_run *cpvdw_run_create_from_file(const char *path) {
  if (!path) {
    record_invalid("path is null");
    return nullptr;
  }
  std::ifstream in(path);
  if (!in) {
    g_last_status = CPVDW_ERR_IO;
    g_last_error = std::string("IoError: cannot read config file '") + path +
                   "'";
    return nullptr;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return cpvdw_run_create(buf.str().c_str());
}

void cpvdw_run_destroy(cpvdw_run *r) { delete r; }

cpvdw_status cpvdw_run_set_problem(cpvdw_run *r, const char *problem) {
  if (!r || !problem)
    return record_invalid("null argument");
  static const char *known[] = {"cp-sphere", "vdw-pair", "many-atom",
                                "born",      "micro",    "verify",
                                "check"};
  for (const char *k : known)
    if (std::string(problem) == k) {
      r->cfg.problem = problem;
      return CPVDW_OK;
    }
  return record_invalid("unknown problem name");
}

cpvdw_status cpvdw_run_set_rel_tol(cpvdw_run *r, double rel_tol) {
  if (!r)
    return record_invalid("null argument");
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    return record_invalid("rel_tol must be in (0, 1)");
  r->cfg.quadrature.rel_tol = rel_tol;
  return CPVDW_OK;
}

cpvdw_status cpvdw_run_set_grid(cpvdw_run *r, int nodes_per_axis) {
  if (!r)
    return record_invalid("null argument");
  if (nodes_per_axis < 2 || nodes_per_axis > 64)
    return record_invalid("nodes_per_axis must be between 2 and 64");
  r->cfg.grid.nodes_per_axis = nodes_per_axis;
  return CPVDW_OK;
}

cpvdw_status cpvdw_run_set_seed(cpvdw_run *r, unsigned long long seed) {
  if (!r)
    return record_invalid("null argument");
  r->cfg.grid.seed = seed;
  return CPVDW_OK;
}

cpvdw_status cpvdw_run_set_monte_carlo(cpvdw_run *r, int enabled,
                                       long samples) {
  if (!r)
    return record_invalid("null argument");
  if (enabled && samples < 64)
    return record_invalid("samples must be at least 64");
  r->cfg.grid.monte_carlo = enabled != 0;
  if (enabled)
    r->cfg.grid.mc_samples = samples;
  return CPVDW_OK;
}

cpvdw_status cpvdw_run_set_output_path(cpvdw_run *r, const char *path) {
  if (!r || !path || !*path)
    return record_invalid("null or empty path");
  r->path_override = path;
  return CPVDW_OK;
}

cpvdw_status cpvdw_run_execute(cpvdw_run *r) {
  if (!r)
    return record_invalid("null argument");
  r->out = run(r->cfg);
  r->executed = true;
  r->resolved_path = r->path_override.empty() ? default_output_path(r->cfg)
                                              : r->path_override;
  if (r->out.ok) {
    g_last_status = CPVDW_OK;
    g_last_error.clear();
    return CPVDW_OK;
  }
  g_last_error = r->out.error_name + ": " + r->out.error_message;
  if (r->out.error_name == "InvalidArgument")
    g_last_status = CPVDW_ERR_INVALID_ARGUMENT;
  else if (r->out.error_name == "ConfigError")
    g_last_status = CPVDW_ERR_CONFIG;
  else if (r->out.error_name == "IoError")
    g_last_status = CPVDW_ERR_IO;
  else if (r->out.error_name == "InternalError")
    g_last_status = CPVDW_ERR_INTERNAL;
  else
    g_last_status = CPVDW_ERR_NUMERICAL;
  return g_last_status;
}

const char *cpvdw_run_csv(const cpvdw_run *r) {
  return r ? r->out.csv.c_str() : "";
}

const char *cpvdw_run_sidecar_json(const cpvdw_run *r) {
  return r ? r->out.sidecar.c_str() : "";
}

const char *cpvdw_run_summary(const cpvdw_run *r) {
  return r ? r->out.summary.c_str() : "";
}

const char *cpvdw_run_error_name(const cpvdw_run *r) {
  return r ? r->out.error_name.c_str() : "";
}

const char *cpvdw_run_error(const cpvdw_run *r) {
  return r ? r->out.error_message.c_str() : "";
}

int cpvdw_run_exit_code(const cpvdw_run *r) {
  if (!r || !r->executed)
    return -1;
  return r->out.exit_code;
}

const char *cpvdw_run_output_path(const cpvdw_run *r) {
  if (!r)
    return "";
  if (!r->executed) {
    // resolved lazily so callers can query before execute as well
    const_cast<cpvdw_run *>(r)->resolved_path =
        r->path_override.empty() ? default_output_path(r->cfg)
                                 : r->path_override;
  }
  return r->resolved_path.c_str();
}

cpvdw_status cpvdw_run_write_outputs(const cpvdw_run *r) {
  if (!r)
    return record_invalid("null argument");
  if (!r->executed || !r->out.ok)
    return record_invalid("no successful run to write");
  try {
    const std::string &path = r->resolved_path;
    {
      std::ofstream csv(path, std::ios::binary);
      if (!csv)
        throw IoError("cannot open '" + path + "' for writing");
      csv << r->out.csv;
      if (!csv)
        throw IoError("short write to '" + path + "'");
    }
    const std::string meta = path + ".meta.json";
    {
      std::ofstream side(meta, std::ios::binary);
      if (!side)
        throw IoError("cannot open '" + meta + "' for writing");
      side << r->out.sidecar;
      if (!side)
        throw IoError("short write to '" + meta + "'");
    }
    return CPVDW_OK;
  } catch (const std::exception &e) {
    return record(e);
  }
}

} // extern "C"
