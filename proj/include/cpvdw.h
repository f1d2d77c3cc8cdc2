/* C interface to the dispersion-potential library.
 *
 * Two opaque handle families:
 *   cpvdw_model  response-function queries against a parsed config
 *   cpvdw_run    configured problem execution producing CSV + sidecar
 *
 * All functions are synchronous and single-threaded.  Handle creation
 * returns NULL on failure; cpvdw_last_error() / cpvdw_last_status() then
 * describe the cause (both are thread-local).  Query and setter calls
 * report through cpvdw_status return values instead.
 *
 * Unless the config says otherwise, quantities cross this interface in
 * natural units: lengths in the reference length L0, frequencies in
 * c/L0, energies in hbar*c/L0.
 */
#ifndef CPVDW_H
#define CPVDW_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CPVDW_API __declspec(dllexport)
#else
#define CPVDW_API __attribute__((visibility("default")))
#endif

typedef enum cpvdw_status {
  CPVDW_OK = 0,
  CPVDW_ERR_INVALID_ARGUMENT = 1,
  CPVDW_ERR_CONFIG = 2,
  CPVDW_ERR_NUMERICAL = 3,
  CPVDW_ERR_IO = 4,
  CPVDW_ERR_INTERNAL = 5
} cpvdw_status;

CPVDW_API const char *cpvdw_version(void);
CPVDW_API const char *cpvdw_status_name(cpvdw_status s);

/* Thread-local record of the most recent failure in this thread. */
CPVDW_API const char *cpvdw_last_error(void);
CPVDW_API cpvdw_status cpvdw_last_status(void);

/* ---------------- response model ---------------- */

typedef struct cpvdw_model cpvdw_model;

CPVDW_API cpvdw_model *cpvdw_model_create(const char *config_json);
CPVDW_API void cpvdw_model_destroy(cpvdw_model *m);

/* Atomic polarizability alpha(iu) of a named species. */
CPVDW_API cpvdw_status cpvdw_model_polarizability(const cpvdw_model *m,
                                                  const char *species,
                                                  double u, double *out);
/* Medium response on the imaginary axis. */
CPVDW_API cpvdw_status cpvdw_model_permittivity(const cpvdw_model *m,
                                                const char *medium, double u,
                                                double *out);
CPVDW_API cpvdw_status cpvdw_model_permeability(const cpvdw_model *m,
                                                const char *medium, double u,
                                                double *out);
/* Local-field corrected volume susceptibility of a body's composition,
 * and the corresponding single-scattering weight q = -t/(1-t). */
CPVDW_API cpvdw_status cpvdw_model_susceptibility(const cpvdw_model *m,
                                                  const char *body, double u,
                                                  double *out);
CPVDW_API cpvdw_status cpvdw_model_q_factor(const cpvdw_model *m,
                                            const char *body, double u,
                                            double *out);
/* Series convergence margin 1 - (2/3) sum_B n_B alpha_B(0); positive
 * means the many-atom expansion converges. */
CPVDW_API cpvdw_status cpvdw_model_convergence_margin(const cpvdw_model *m,
                                                      const char *body,
                                                      double *out);
/* Dilution diagnostic: per-atom volume over atomic volume, against the
 * threshold 8*factor/3. */
CPVDW_API cpvdw_status cpvdw_model_packing_ratio(const cpvdw_model *m,
                                                 const char *body,
                                                 double factor, double *ratio,
                                                 double *threshold);

/* ---------------- problem runs ---------------- */

typedef struct cpvdw_run cpvdw_run;

CPVDW_API cpvdw_run *cpvdw_run_create(const char *config_json);
CPVDW_API cpvdw_run *cpvdw_run_create_from_file(const char *path);
CPVDW_API void cpvdw_run_destroy(cpvdw_run *r);

/* Overrides applied on top of the parsed config. */
CPVDW_API cpvdw_status cpvdw_run_set_problem(cpvdw_run *r,
                                             const char *problem);
CPVDW_API cpvdw_status cpvdw_run_set_rel_tol(cpvdw_run *r, double rel_tol);
CPVDW_API cpvdw_status cpvdw_run_set_grid(cpvdw_run *r, int nodes_per_axis);
CPVDW_API cpvdw_status cpvdw_run_set_seed(cpvdw_run *r,
                                          unsigned long long seed);
CPVDW_API cpvdw_status cpvdw_run_set_monte_carlo(cpvdw_run *r, int enabled,
                                                 long samples);
CPVDW_API cpvdw_status cpvdw_run_set_output_path(cpvdw_run *r,
                                                 const char *path);

CPVDW_API cpvdw_status cpvdw_run_execute(cpvdw_run *r);

/* Results of the last execute.  Strings stay owned by the handle and
 * are valid until the next execute or destroy.  Before a successful
 * execute, csv/sidecar are empty and the exit code is -1. */
CPVDW_API const char *cpvdw_run_csv(const cpvdw_run *r);
CPVDW_API const char *cpvdw_run_sidecar_json(const cpvdw_run *r);
CPVDW_API const char *cpvdw_run_summary(const cpvdw_run *r);
CPVDW_API const char *cpvdw_run_error_name(const cpvdw_run *r);
CPVDW_API const char *cpvdw_run_error(const cpvdw_run *r);
/* Process exit code convention: 0 ok, 2 config/argument, 3 numerical,
 * 1 IO/internal. */
CPVDW_API int cpvdw_run_exit_code(const cpvdw_run *r);

/* Resolved output path: the override, the config's output.path, or
 * "<problem>.csv". */
CPVDW_API const char *cpvdw_run_output_path(const cpvdw_run *r);

/* Writes the CSV to the output path and the sidecar to the same path
 * with ".meta.json" appended.  Never writes after a failed execute. */
CPVDW_API cpvdw_status cpvdw_run_write_outputs(const cpvdw_run *r);

#ifdef __cplusplus
}
#endif

#endif
