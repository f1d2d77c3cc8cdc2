#ifndef CPVDW_POTENTIALS_HPP
#define CPVDW_POTENTIALS_HPP

#include <functional>
#include <span>

#include "green.hpp"
#include "math3.hpp"
#include "quadrature.hpp"
#include "response.hpp"

namespace cpvdw {

// Radial profile functions of the two-point dispersion kernels.  g_ee
// carries the electric-electric channel, g_em the electric-magnetic one:
//   g_ee(x) = 2 e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4)
//   g_em(x) = 2 e^{-2x} (1 + 2x + x^2)
double g_ee(double x);
double g_em(double x);

struct AtomAt {
  AtomSpecies species;
  Vec3 position;
};

// A small homogeneous sphere, radius R well below the atom separation.
struct SmallSphere {
  double radius = 0.0;
  MediumModel medium;
  Vec3 center;
};

// Ground-state atom-sphere dispersion potential (long-wavelength sphere
// response, both polarizations):
//   U = -1/(32 pi^3 r^6) Int du alpha_A [ g_ee(u r) a_e - u^2 r^2 g_em(u r) a_m ].
// Enforces R/r < 0.2 (GeometryViolation); warns above 0.1 through
// QuadResult::warning.
QuadResult cp_sphere(const AtomAt &atom, const SmallSphere &sphere,
                     const QuadratureSpec &spec);

// Short-distance (nonretarded) electric and magnetic reductions and the
// long-distance (retarded) closed form.
QuadResult cp_sphere_nonretarded_electric(const AtomAt &atom,
                                          const SmallSphere &sphere,
                                          const QuadratureSpec &spec);
QuadResult cp_sphere_nonretarded_magnetic(const AtomAt &atom,
                                          const SmallSphere &sphere,
                                          const QuadratureSpec &spec);
double cp_sphere_retarded(const AtomAt &atom, const SmallSphere &sphere);

// Two-atom dispersion potential from the full dyadic kernel,
//   U = -(1/2 pi) Int du u^4 alpha_A alpha_B Tr[G(rA,rB) G(rB,rA)],
// valid in vacuum or an unbounded bulk background.
QuadResult vdw_pair_general(const AtomAt &a, const AtomAt &b,
                            const Background &bg, const QuadratureSpec &spec);

// Same quantity through the radial profile form for a bulk medium:
//   U = -(1/32 pi^3 r^6) Int du alpha_A alpha_B g_ee(n(iu) u r) / eps^2(iu).
QuadResult vdw_pair_bulk(const AtomAt &a, const AtomAt &b,
                         const MediumModel &medium,
                         const QuadratureSpec &spec);
QuadResult vdw_pair_bulk_nonretarded(const AtomAt &a, const AtomAt &b,
                                     const MediumModel &medium,
                                     const QuadratureSpec &spec);
double vdw_pair_bulk_retarded(const AtomAt &a, const AtomAt &b,
                              const MediumModel &medium);

// j-atom dispersion potential (2 <= j <= 5),
//   U = (-1)^(j-1) / ((1 + [j==2]) pi) Int du u^(2j) prod_i alpha_i
//       sum_reps Tr[H(r_c0,r_c1) ... H(r_c_{j-1},r_c0)],
// the sum running over the cyclic-order class representatives.
QuadResult vdw_many_atom(std::span<const AtomAt> atoms, const Background &bg,
                         const QuadratureSpec &spec);

// Central-difference force F = -grad U with one Richardson step (h, h/2);
// error_estimate holds the per-axis extrapolation difference.
struct ForceResult {
  Vec3 force;
  Vec3 error_estimate;
};
ForceResult force(const std::function<double(const Vec3 &)> &potential,
                  const Vec3 &r, double step);

// Smallest oscillator frequency across the given species and media;
// defines the retardation scale r*omega_char (in units with c = 1).
double characteristic_frequency(std::span<const AtomSpecies> species,
                                std::span<const MediumModel> media);

} // namespace cpvdw

#endif
