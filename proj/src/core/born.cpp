#include "born.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "constants.hpp"
#include "errors.hpp"

namespace cpvdw {

namespace {

// Geometric kernel integrals of a body seen from the atom position, per
// imaginary frequency:
//   K1(u) = Int d3s          Tr[G(rA,s) G(s,rA)]
//   K2(u) = Int d3s1 d3s2    Tr[G(rA,s1) H(s1,s2) G(s2,rA)]
// Composition factors are body-wide scalars and multiply outside.
struct KernelIntegrals {
  double k1 = 0.0;
  double k2 = 0.0;
  double excluded_measure = 0.0;
  long evals = 0;
};

struct BodyEngine {
  const BodySpec &body;
  Background bg;
  VolumeGrid grid;
  double delta_excl = 0.0;
  bool monte_carlo = false;
  long mc_samples = 0;
  std::uint64_t seed = 0;

  BodyEngine(const BodySpec &b, const Background &background,
             const BornSpec &spec, int grid_n)
      : body(b), bg(background) {
    grid = make_grid(b.geometry, grid_n);
    if (spec.delta_excl > 0.0)
      delta_excl = spec.delta_excl;
    else
      delta_excl = body.is_volume() ? grid.spacing : kMinSeparation;
    monte_carlo = spec.monte_carlo && body.is_volume();
    mc_samples = spec.mc_samples;
    seed = spec.seed;
  }

  KernelIntegrals kernels(const Vec3 &rA, double u, bool need_k2,
                          std::uint64_t u_index) const {
    KernelIntegrals out;
    const std::size_t n = grid.size();

    std::vector<Mat3> a(n); // G(rA, s_i)
    std::vector<double> k1_terms(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = green(bg, rA, grid.nodes[i], u);
      // Tr[G(rA,s) G(s,rA)] = Tr[A A^T] by reciprocity
      k1_terms[i] = grid.weights[i] * frobenius2(a[i]);
    }
    out.k1 = pairwise_sum(k1_terms);
    out.evals += static_cast<long>(n);

    if (!need_k2)
      return out;

    if (monte_carlo) {
      auto f = [&](const Vec3 &s1, const Vec3 &s2) {
        const Mat3 g1 = green(bg, rA, s1, u);
        const Mat3 h = split_delta(bg, s1, s2, u);
        const Mat3 g2 = green(bg, rA, s2, u);
        return trace_product_bt(g1 * h, g2);
      };
      // decorrelate frequencies while keeping the whole run seeded
      VolumeResult r = integrate_volume2_mc(
          f, body.geometry, delta_excl, mc_samples,
          seed ^ (0x9e3779b97f4a7c15ULL * (u_index + 1)));
      out.k2 = r.value;
      out.excluded_measure = r.excluded_measure;
      out.evals += mc_samples;
      return out;
    }

    // Exact pair sum on the product grid.  The chain is symmetric under
    // s1 <-> s2 (reciprocity), so only unordered pairs are touched.
    std::vector<double> rows;
    rows.reserve(n);
    double excluded = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row;
      row.reserve(n - i);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (norm(grid.nodes[i] - grid.nodes[j]) < delta_excl) {
          excluded += 2.0 * grid.weights[i] * grid.weights[j];
          continue;
        }
        const Mat3 h = split_delta(bg, grid.nodes[i], grid.nodes[j], u);
        // Tr[A_i H A_j^T]
        const double tr = trace_product_bt(a[i] * h, a[j]);
        row.push_back(2.0 * grid.weights[i] * grid.weights[j] * tr);
      }
      rows.push_back(pairwise_sum(row));
      excluded += grid.weights[i] * grid.weights[i]; // diagonal
      out.evals += static_cast<long>(n - i - 1);
    }
    out.k2 = pairwise_sum(rows);
    out.excluded_measure = excluded;
    return out;
  }
};

// Finish a fixed-grid frequency integral: Kronrod value, error from the
// embedded Gauss rule accumulated panel by panel.
QuadResult semiaxis_apply(const SemiAxisGrid &g,
                          const std::vector<double> &fvals) {
  QuadResult res;
  const std::size_t n = g.size();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i)
    terms[i] = fvals[i] * g.weight[i];
  res.value = pairwise_sum(terms);

  const std::size_t pn = static_cast<std::size_t>(g.panel_nodes);
  double err = 0.0;
  for (std::size_t p = 0; p < n; p += pn) {
    double k = 0.0, gauss = 0.0;
    for (std::size_t i = p; i < std::min(n, p + pn); ++i) {
      k += fvals[i] * g.weight[i];
      gauss += fvals[i] * g.weight_gauss[i];
    }
    err += std::abs(k - gauss);
  }
  res.error_estimate = err;
  res.evals = static_cast<long>(n);
  return res;
}

void require_volume_body(const BodySpec &body, const char *what) {
  if (!body.is_volume())
    throw InvalidArgument(std::string(what) +
                          ": point-cloud bodies carry no volume "
                          "susceptibility; use the microscopic terms");
}

double atom_body_clearance(const AtomAt &atom, const BodySpec &body) {
  const double d = body_distance(body, atom.position);
  if (d < kMinSeparation)
    throw GeometryViolation("atom must lie strictly outside the body");
  return d;
}

SemiAxisGrid frequency_grid(const BornSpec &spec, double clearance) {
  const double u0 = spec.quad.u0 > 0.0 ? spec.quad.u0 : 1.0 / (2.0 * clearance);
  return semiaxis_grid(u0, spec.quad.u_nodes);
}

constexpr double kInv2Pi = 1.0 / (2.0 * kPi);

} // namespace

QuadResult born_term(const AtomAt &atom, const BodySpec &body,
                     const Background &bg, int k, const BornSpec &spec,
                     ChiMode mode) {
  if (k != 1 && k != 2)
    throw UnsupportedOrder("scattering orders k = 1, 2 are implemented");
  body.validate();
  require_volume_body(body, "born_term");
  const double clearance = atom_body_clearance(atom, body);
  if (mode == ChiMode::clausius_mosotti)
    clausius_mosotti(body.composition, 0.0); // denominator gate

  BodyEngine engine(body, bg, spec, spec.grid_n);
  const SemiAxisGrid ug = frequency_grid(spec, clearance);

  std::vector<double> fvals(ug.size());
  double excluded = 0.0;
  long evals = 0;
  for (std::size_t i = 0; i < ug.size(); ++i) {
    const double u = ug.u[i];
    const double alpha = polarizability(atom.species, u);
    const double sigma = density_polarizability_sum(body.composition, u);
    const double chi =
        mode == ChiMode::clausius_mosotti ? sigma / (1.0 - sigma / 3.0) : sigma;
    const KernelIntegrals kk = engine.kernels(atom.position, u, k == 2, i);
    const double u4 = std::pow(u, 4);
    if (k == 1) {
      fvals[i] = -kInv2Pi * u4 * alpha * chi * kk.k1;
    } else {
      // delta channel of the middle tensor collapses one volume
      // integral and one power of u^2, leaving weight chi^2/3
      fvals[i] = kInv2Pi * u4 * alpha * chi * chi *
                 (kk.k1 / 3.0 + u * u * kk.k2);
    }
    excluded = std::max(excluded, kk.excluded_measure);
    evals += kk.evals;
  }
  QuadResult res = semiaxis_apply(ug, fvals);
  res.evals = evals;
  (void)excluded;
  return res;
}

QuadResult micro_term(const AtomAt &atom, const BodySpec &body, int l,
                      const BornSpec &spec, const Background &bg) {
  if (l != 1 && l != 2)
    throw UnsupportedOrder("microscopic cluster orders l = 1, 2 are "
                           "implemented");
  body.validate();
  const double clearance = atom_body_clearance(atom, body);

  BodyEngine engine(body, bg, spec, spec.grid_n);
  const SemiAxisGrid ug = frequency_grid(spec, clearance);

  std::vector<double> fvals(ug.size());
  long evals = 0;
  for (std::size_t i = 0; i < ug.size(); ++i) {
    const double u = ug.u[i];
    const double alpha = polarizability(atom.species, u);
    const double sigma = density_polarizability_sum(body.composition, u);
    const KernelIntegrals kk = engine.kernels(atom.position, u, l == 2, i);
    const double u4 = std::pow(u, 4);
    fvals[i] = (l == 1) ? -kInv2Pi * u4 * alpha * sigma * kk.k1
                        : kInv2Pi * u4 * u * u * alpha * sigma * sigma * kk.k2;
    evals += kk.evals;
  }
  QuadResult res = semiaxis_apply(ug, fvals);
  res.evals = evals;
  return res;
}

QuadResult born_term_l_channel(const AtomAt &atom, const BodySpec &body,
                               int k, int l, const BornSpec &spec,
                               const Background &bg) {
  const bool supported =
      (k == 1 && l == 1) || (k == 2 && l == 1) || (k == 2 && l == 2);
  if (!supported)
    throw UnsupportedOrder(
        "channel decomposition implemented for (k,l) = (1,1), (2,1), (2,2)");
  body.validate();
  require_volume_body(body, "born_term_l_channel");
  const double clearance = atom_body_clearance(atom, body);
  clausius_mosotti(body.composition, 0.0); // denominator gate

  BodyEngine engine(body, bg, spec, spec.grid_n);
  const SemiAxisGrid ug = frequency_grid(spec, clearance);

  std::vector<double> fvals(ug.size());
  long evals = 0;
  for (std::size_t i = 0; i < ug.size(); ++i) {
    const double u = ug.u[i];
    const double alpha = polarizability(atom.species, u);
    const double sigma = density_polarizability_sum(body.composition, u);
    const double t = sigma / 3.0;
    const double chi = sigma / (1.0 - t);
    const double q = -t / (1.0 - t);
    const KernelIntegrals kk = engine.kernels(atom.position, u, l == 2, i);
    const double u4 = std::pow(u, 4);
    double v = 0.0;
    if (k == 1 && l == 1)
      v = -kInv2Pi * u4 * alpha * chi * kk.k1; // eta = 0
    else if (k == 2 && l == 1)
      v = -kInv2Pi * u4 * alpha * chi * q * kk.k1; // one local-field power
    else
      v = kInv2Pi * u4 * u * u * alpha * chi * chi * kk.k2; // eta = (0,0)
    fvals[i] = v;
    evals += kk.evals;
  }
  QuadResult res = semiaxis_apply(ug, fvals);
  res.evals = evals;
  return res;
}

ResummationReport resummation_check(const Composition &c, double u,
                                    int eta_max, double rel_tol) {
  if (eta_max < 0)
    throw InvalidArgument("eta_max must be >= 0");
  const double q = q_factor(c, u);
  if (!(std::abs(q) < 1.0))
    throw DivergentSeries("local-field factor |q| >= 1: the geometric "
                          "series does not converge");
  ResummationReport r;
  r.closed_form = 1.0 / (1.0 - q);
  double term = 1.0, sum = 0.0;
  for (int m = 0; m <= eta_max; ++m) {
    sum += term;
    r.partial_sums.push_back(sum);
    term *= q;
  }
  r.converged =
      std::abs(r.partial_sums.back() - r.closed_form) <=
      rel_tol * std::abs(r.closed_form);
  return r;
}

SeriesReport verify_equivalence(const AtomAt &atom, const BodySpec &body,
                                const BornSpec &spec, VerifyOrders orders,
                                const std::vector<int> &refinements,
                                double tolerance) {
  if (orders.K < 1 || orders.K > 2 || orders.L < 1 || orders.L > 2)
    throw UnsupportedOrder("verification supports orders K, L in {1, 2}");
  if (refinements.empty())
    throw InvalidArgument("at least one grid refinement is required");
  body.validate();
  require_volume_body(body, "verify_equivalence");
  const double clearance = atom_body_clearance(atom, body);

  const ConvergenceReport gate = check_convergence(body.composition);
  if (!gate.passes)
    throw ConvergenceGateFailed(
        "(2/3) sum_B n_B alpha_B(0) >= 1: the resummed series is outside "
        "its convergence region");

  const Background bg = Background::make_vacuum();
  const SemiAxisGrid ug = frequency_grid(spec, clearance);
  const bool need_k2 = orders.K >= 2 || orders.L >= 2;

  SeriesReport report;
  report.K = orders.K;
  report.L = orders.L;
  report.tolerance = tolerance;
  report.sigma0 = density_polarizability_sum(body.composition, 0.0);
  report.chi0 = clausius_mosotti(body.composition, 0.0);
  report.convergence_margin = gate.margin;

  for (int n : refinements) {
    BodyEngine engine(body, bg, spec, n);

    std::vector<double> f_d1(ug.size()), f_d2(ug.size()), f_d21(ug.size()),
        f_d22(ug.size()), f_m1(ug.size()), f_m2(ug.size());
    double excluded = 0.0;

    for (std::size_t i = 0; i < ug.size(); ++i) {
      const double u = ug.u[i];
      const double alpha = polarizability(atom.species, u);
      const double sigma = density_polarizability_sum(body.composition, u);
      const double t = sigma / 3.0;
      const double chi = sigma / (1.0 - t);
      const double q = -t / (1.0 - t);
      const KernelIntegrals kk =
          engine.kernels(atom.position, u, need_k2, i);
      const double u4 = std::pow(u, 4);
      const double u6 = u4 * u * u;

      f_d1[i] = -kInv2Pi * u4 * alpha * chi * kk.k1;
      f_d2[i] = kInv2Pi * u4 * alpha * chi * chi * (kk.k1 / 3.0) +
                kInv2Pi * u6 * alpha * chi * chi * kk.k2;
      f_d21[i] = -kInv2Pi * u4 * alpha * chi * q * kk.k1;
      f_d22[i] = kInv2Pi * u6 * alpha * chi * chi * kk.k2;
      f_m1[i] = -kInv2Pi * u4 * alpha * sigma * kk.k1;
      f_m2[i] = kInv2Pi * u6 * alpha * sigma * sigma * kk.k2;
      excluded = std::max(excluded, kk.excluded_measure);
    }

    RefinementRow row;
    row.grid_n = n;
    row.delta1 = semiaxis_apply(ug, f_d1).value;
    row.delta2 = semiaxis_apply(ug, f_d2).value;
    row.delta21 = semiaxis_apply(ug, f_d21).value;
    row.delta22 = semiaxis_apply(ug, f_d22).value;
    row.micro1 = semiaxis_apply(ug, f_m1).value;
    row.micro2 = semiaxis_apply(ug, f_m2).value;
    row.macro_total = row.delta1 + (orders.K >= 2 ? row.delta2 : 0.0);
    row.micro_total = row.micro1 + (orders.L >= 2 ? row.micro2 : 0.0);
    row.excluded_measure = excluded;
    row.rel_discrepancy =
        std::abs(row.micro_total - row.macro_total) /
        std::abs(row.macro_total);
    report.rows.push_back(row);
  }

  // Grid-limit estimate of the discrepancy.  The per-refinement values
  // are usually nearly flat (both sides share grids, so discretization
  // cancels in the difference); only extrapolate when the sequence is
  // genuinely contracting.
  {
    std::vector<double> d;
    for (const auto &row : report.rows)
      d.push_back((row.micro_total - row.macro_total) / row.macro_total);
    double extrap = d.back();
    const std::size_t m = d.size();
    if (m >= 3) {
      const double s1 = d[m - 2] - d[m - 3];
      const double s2 = d[m - 1] - d[m - 2];
      if (std::abs(s2) > 1e-3 * std::abs(d[m - 1]) && std::abs(s2) < std::abs(s1)) {
        const double ratio = s2 / s1;
        extrap = d[m - 1] + s2 * ratio / (1.0 - ratio);
      }
    }
    report.extrapolated_discrepancy = std::abs(extrap);
  }

  const RefinementRow &finest = report.rows.back();
  report.residual_tail_bound =
      std::pow(std::abs(report.chi0), 3) * std::abs(finest.delta1);
  const double rel_bound =
      report.residual_tail_bound / std::abs(finest.macro_total);
  report.passed =
      report.extrapolated_discrepancy < std::max(tolerance, rel_bound);
  return report;
}

std::string series_report_json(const SeriesReport &r) {
  nlohmann::json j;
  j["orders"] = {{"K", r.K}, {"L", r.L}};
  j["sigma0"] = r.sigma0;
  j["chi0"] = r.chi0;
  j["convergence_margin"] = r.convergence_margin;
  j["residual_tail_bound"] = r.residual_tail_bound;
  j["tolerance"] = r.tolerance;
  j["extrapolated_discrepancy"] = r.extrapolated_discrepancy;
  j["passed"] = r.passed;
  j["refinements"] = nlohmann::json::array();
  for (const auto &row : r.rows) {
    j["refinements"].push_back({{"grid_n", row.grid_n},
                                {"delta1", row.delta1},
                                {"delta2", row.delta2},
                                {"delta21", row.delta21},
                                {"delta22", row.delta22},
                                {"micro1", row.micro1},
                                {"micro2", row.micro2},
                                {"macro_total", row.macro_total},
                                {"micro_total", row.micro_total},
                                {"rel_discrepancy", row.rel_discrepancy},
                                {"excluded_measure", row.excluded_measure}});
  }
  return j.dump(2);
}

std::string series_report_csv(const SeriesReport &r) {
  std::string out = "grid_n,order,born_value,micro_value,channel_21,"
                    "macro_cumulative,micro_cumulative,rel_discrepancy,"
                    "excluded_measure\n";
  char buf[512];
  for (const auto &row : r.rows) {
    // order 1
    std::snprintf(buf, sizeof buf,
                  "%d,1,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  row.grid_n, row.delta1, row.micro1, 0.0, row.delta1,
                  row.micro1, std::abs(row.micro1 - row.delta1) /
                                  std::abs(row.delta1),
                  row.excluded_measure);
    out += buf;
    if (r.K >= 2 || r.L >= 2) {
      std::snprintf(buf, sizeof buf,
                    "%d,2,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    row.grid_n, row.delta2, row.micro2, row.delta21,
                    row.macro_total, row.micro_total, row.rel_discrepancy,
                    row.excluded_measure);
      out += buf;
    }
  }
  return out;
}

} // namespace cpvdw
