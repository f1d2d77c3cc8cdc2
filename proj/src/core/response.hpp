#ifndef CPVDW_RESPONSE_HPP
#define CPVDW_RESPONSE_HPP

#include <string>
#include <vector>

#include "errors.hpp"

namespace cpvdw {

// One electric-dipole transition: frequency omega (units c/L0) and squared
// dipole matrix element d2 (units hbar*c*eps0*L0^2).
struct Oscillator {
  double omega = 0.0;
  double d2 = 0.0;
};

struct AtomSpecies {
  std::string name;
  std::vector<Oscillator> oscillators;

  void validate() const;
};

// Ground-state polarizability on the imaginary frequency axis,
//   alpha(iu) = (2/3) sum_k omega_k d2_k / (omega_k^2 + u^2),
// real, positive, monotonically decreasing in u.
double polarizability(const AtomSpecies &a, double u);

// Lorentz pole for permittivity/permeability: on the imaginary axis each
// pole contributes omega_p^2 / (omega_t^2 + gamma*u + u^2).
struct LorentzPole {
  double omega_p = 0.0;
  double omega_t = 0.0;
  double gamma = 0.0;
};

struct MediumModel {
  std::string name;
  std::vector<LorentzPole> eps_poles;
  std::vector<LorentzPole> mu_poles; // empty means mu = 1

  void validate() const;
};

double permittivity(const MediumModel &m, double u);  // >= 1 on the imaginary axis
double permeability(const MediumModel &m, double u);
double refractive_index(const MediumModel &m, double u); // sqrt(eps*mu)

// A species embedded at number density `density` (units 1/L0^3).  For
// point-cloud bodies the same field carries the per-point weight instead.
struct Component {
  AtomSpecies species;
  double density = 0.0;
};
using Composition = std::vector<Component>;

// sum_B n_B alpha_B(iu), the dilute (bare) susceptibility.
double density_polarizability_sum(const Composition &c, double u);

// Clausius-Mosotti susceptibility
//   chi(iu) = sum_B n_B alpha_B / (1 - sum_C n_C alpha_C / 3).
// Throws DenominatorViolation if the u = 0 denominator is not positive.
double clausius_mosotti(const Composition &c, double u);

// Local-field factor q(iu) = -(sum n alpha/3) / (1 - sum n alpha/3).
// Identity: chi = -3 q.  Same denominator gate as clausius_mosotti.
double q_factor(const Composition &c, double u);

// Series convergence gate: (2/3) sum_B n_B alpha_B(0) < 1.
struct ConvergenceReport {
  bool passes = false;
  double margin = 0.0; // 1 - (2/3) sum n alpha(0)
};
ConvergenceReport check_convergence(const Composition &c);

// Dilution bound: per-atom volume V_s = 1/(sum_B n_B) against the atomic
// volume V_A = (4 pi/3) a_bohr^3.  satisfied when V_s >= (8 f / 3) V_A.
struct PackingReport {
  double ratio = 0.0; // V_s / V_A
  double threshold = 0.0; // 8 f / 3
  bool satisfied = false;
  bool marginal = false; // ratio within 1e-9 (rel) of the threshold
};
PackingReport packing_diagnostic(const Composition &c, double species_factor,
                                 double bohr_radius);

// Small magnetodielectric sphere in the long-wavelength limit:
//   alpha_e = 4 pi R^3 (eps - 1)/(eps + 2),
//   alpha_m = 4 pi R^3 (mu  - 1)/(mu  + 2).
struct SpherePolarizabilities {
  double alpha_e = 0.0;
  double alpha_m = 0.0;
};
SpherePolarizabilities sphere_polarizabilities(double radius,
                                               const MediumModel &m, double u);

} // namespace cpvdw

#endif
