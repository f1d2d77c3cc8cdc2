#ifndef CPVDW_QUADRATURE_HPP
#define CPVDW_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace cpvdw {

// Controls for the semi-infinite frequency integrals.  The interval
// u in (0, inf) is mapped to t in (0, 1) via u = u0 * t / (1 - t); u0 is
// a scale hint (0 means "let the caller's heuristic decide").
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-30;
  long max_evals = 200000;
  double u0 = 0.0;
  // Node budget for the fixed product-grid frequency rule used by the
  // volume-coupled series terms (rounded up to whole 15-point panels).
  int u_nodes = 48;

  enum class Rule { adaptive_gk15, composite_gl };
  Rule rule = Rule::adaptive_gk15;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evals = 0;
  bool converged = true; // false once the eval budget ran out
  bool warning = false;  // set by callers for soft contract violations
};

// Adaptive integration of f over (0, inf).  Deterministic: identical
// inputs subdivide identically and sum in interval order.  Throws
// NonFinite if f produces NaN/inf; a spent eval budget is reported via
// converged = false, never by throwing.
QuadResult integrate_semiaxis(const std::function<double(double)> &f,
                              const QuadratureSpec &spec);

// Gauss-Legendre rule on [-1, 1], nodes ascending.  Computed on demand
// by Newton iteration on the Legendre recurrence (machine precision).
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule &gauss_legendre(int n);

// Fixed product rule on (0, inf) built from whole 15-node panels of a
// Gauss-Kronrod rule in the transformed variable.  weight_gauss carries
// the embedded 7-point Gauss weights (zero on Kronrod-only nodes) so a
// caller accumulating both sums gets an error estimate for free.
struct SemiAxisGrid {
  std::vector<double> u;
  std::vector<double> weight;       // Kronrod weights, jacobian included
  std::vector<double> weight_gauss; // embedded Gauss weights
  int panel_nodes = 15;

  std::size_t size() const { return u.size(); }
};
SemiAxisGrid semiaxis_grid(double u0, int min_nodes);

// Pairwise (cascade) summation: deterministic and accurate enough that
// results are bit-stable for a fixed node count.
double pairwise_sum(std::span<const double> v);

} // namespace cpvdw

#endif
