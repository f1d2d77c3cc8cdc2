#include "response.hpp"

#include <cmath>
#include <limits>

#include "constants.hpp"

namespace cpvdw {

namespace {

void require_nonnegative_u(double u) {
  if (!(u >= 0.0))
    throw InvalidArgument("imaginary frequency u must be >= 0");
}

} // namespace

void AtomSpecies::validate() const {
  if (oscillators.empty())
    throw InvalidArgument("species '" + name + "': empty oscillator list");
  for (const auto &o : oscillators) {
    if (!(o.omega > 0.0))
      throw InvalidArgument("species '" + name + "': oscillator omega must be > 0");
    if (!(o.d2 >= 0.0))
      throw InvalidArgument("species '" + name + "': oscillator d2 must be >= 0");
  }
}

double polarizability(const AtomSpecies &a, double u) {
  require_nonnegative_u(u);
  a.validate();
  double s = 0.0;
  for (const auto &o : a.oscillators)
    s += o.omega * o.d2 / (o.omega * o.omega + u * u);
  return (2.0 / 3.0) * s;
}

void MediumModel::validate() const {
  auto check = [&](const std::vector<LorentzPole> &poles, const char *which) {
    for (const auto &p : poles) {
      if (!(p.omega_t > 0.0))
        throw InvalidArgument("medium '" + name + "': " + which +
                              " pole omega_t must be > 0");
      if (!(p.omega_p >= 0.0))
        throw InvalidArgument("medium '" + name + "': " + which +
                              " pole omega_p must be >= 0");
      if (!(p.gamma >= 0.0))
        throw InvalidArgument("medium '" + name + "': " + which +
                              " pole gamma must be >= 0");
    }
  };
  check(eps_poles, "eps");
  check(mu_poles, "mu");
}

namespace {

double one_plus_poles(const std::vector<LorentzPole> &poles, double u) {
  double s = 1.0;
  for (const auto &p : poles)
    s += p.omega_p * p.omega_p /
         (p.omega_t * p.omega_t + p.gamma * u + u * u);
  return s;
}

} // namespace

double permittivity(const MediumModel &m, double u) {
  require_nonnegative_u(u);
  m.validate();
  return one_plus_poles(m.eps_poles, u);
}

double permeability(const MediumModel &m, double u) {
  require_nonnegative_u(u);
  m.validate();
  return one_plus_poles(m.mu_poles, u);
}

double refractive_index(const MediumModel &m, double u) {
  return std::sqrt(permittivity(m, u) * permeability(m, u));
}

double density_polarizability_sum(const Composition &c, double u) {
  require_nonnegative_u(u);
  double s = 0.0;
  for (const auto &comp : c) {
    if (!(comp.density >= 0.0))
      throw InvalidArgument("component density must be >= 0");
    s += comp.density * polarizability(comp.species, u);
  }
  return s;
}

namespace {

// Denominator gate: 1 - sum n alpha(0)/3 must be positive before any
// local-field resummation makes sense.
void require_static_denominator(const Composition &c) {
  const double t0 = density_polarizability_sum(c, 0.0) / 3.0;
  if (!(t0 < 1.0))
    throw DenominatorViolation(
        "sum_B n_B alpha_B(0)/3 >= 1: local-field denominator vanishes");
}

} // namespace

double clausius_mosotti(const Composition &c, double u) {
  require_static_denominator(c);
  const double sig = density_polarizability_sum(c, u);
  return sig / (1.0 - sig / 3.0);
}

double q_factor(const Composition &c, double u) {
  require_static_denominator(c);
  const double t = density_polarizability_sum(c, u) / 3.0;
  return -t / (1.0 - t);
}

ConvergenceReport check_convergence(const Composition &c) {
  const double v = (2.0 / 3.0) * density_polarizability_sum(c, 0.0);
  ConvergenceReport r;
  r.margin = 1.0 - v;
  r.passes = v < 1.0;
  return r;
}

PackingReport packing_diagnostic(const Composition &c, double species_factor,
                                 double bohr_radius) {
  if (!(species_factor > 1.0))
    throw InvalidArgument("packing species factor must be > 1");
  if (!(bohr_radius > 0.0))
    throw InvalidArgument("bohr radius must be > 0");
  double ntot = 0.0;
  for (const auto &comp : c) {
    if (!(comp.density >= 0.0))
      throw InvalidArgument("component density must be >= 0");
    ntot += comp.density;
  }
  PackingReport r;
  r.threshold = 8.0 * species_factor / 3.0;
  const double va = (4.0 / 3.0) * kPi * bohr_radius * bohr_radius * bohr_radius;
  if (ntot == 0.0) {
    r.ratio = std::numeric_limits<double>::infinity();
    r.satisfied = true;
    r.marginal = false;
    return r;
  }
  r.ratio = 1.0 / (ntot * va);
  r.satisfied = r.ratio >= r.threshold * (1.0 - 1e-9);
  r.marginal = std::abs(r.ratio - r.threshold) <= 1e-9 * r.threshold;
  return r;
}

SpherePolarizabilities sphere_polarizabilities(double radius,
                                               const MediumModel &m,
                                               double u) {
  if (!(radius > 0.0))
    throw InvalidArgument("sphere radius must be > 0");
  const double eps = permittivity(m, u);
  const double mu = permeability(m, u);
  const double pref = 4.0 * kPi * radius * radius * radius;
  SpherePolarizabilities r;
  r.alpha_e = pref * (eps - 1.0) / (eps + 2.0);
  r.alpha_m = pref * (mu - 1.0) / (mu + 2.0);
  return r;
}

} // namespace cpvdw
