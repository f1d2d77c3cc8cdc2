#ifndef CPVDW_BORN_HPP
#define CPVDW_BORN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"
#include "volume_grid.hpp"

namespace cpvdw {

// How the body susceptibility entering the scattering expansion is built
// from the composition: the local-field (Clausius-Mosotti) form
// chi = sigma/(1 - sigma/3) with sigma = sum_B n_B alpha_B, or the bare
// dilute form chi = sigma.
enum class ChiMode { clausius_mosotti, dilute };

struct BornSpec {
  QuadratureSpec quad;
  int grid_n = 8;          // volume grid nodes per axis
  double delta_excl = 0.0; // 0: one grid spacing (clouds: coincidence threshold)
  bool monte_carlo = false;
  long mc_samples = 100000;
  std::uint64_t seed = 12345;
};

// k-th scattering-order correction to the atom potential,
//   D_k U = (-1)^k/(2 pi) Int du u^(2k+2) alpha_A
//           [prod_i Int d3s_i chi(iu)] Tr[G(rA,s1) ... G(sk,rA)].
// The coincidence (delta) part of the middle tensor at k = 2 is folded in
// analytically as a single-volume channel with weight chi^2/3; only the
// regular part is integrated over the 6d grid.  Supported orders k = 1, 2.
// Bodies must be volume geometries (the susceptibility of a point cloud
// is undefined); the atom must lie outside the body.
QuadResult born_term(const AtomAt &atom, const BodySpec &body,
                     const Background &bg, int k, const BornSpec &spec,
                     ChiMode mode = ChiMode::clausius_mosotti);

// l-th order term of the microscopic many-atom series,
//   D^l U = [prod_i Int d3s_i sum_B n_B] V_{A B1..Bl},
// the l-fold density-weighted integral of the (l+1)-atom interaction.
// Point clouds use direct sums over ordered tuples of distinct points
// (each unordered pair of the three-atom term counted once).
QuadResult micro_term(const AtomAt &atom, const BodySpec &body, int l,
                      const BornSpec &spec,
                      const Background &bg = Background::make_vacuum());

// Fixed-(k,l) channel of the scattering order k resolved by the number l
// of regular two-point links, with the local-field powers q^eta carried
// explicitly: supported (k,l) = (1,1), (2,1), (2,2).
QuadResult born_term_l_channel(const AtomAt &atom, const BodySpec &body,
                               int k, int l, const BornSpec &spec,
                               const Background &bg = Background::make_vacuum());

// Partial sums of the local-field geometric series sum_eta q^eta against
// the closed form 1/(1-q).  Throws DivergentSeries when |q(u)| >= 1.
struct ResummationReport {
  std::vector<double> partial_sums;
  double closed_form = 0.0;
  bool converged = false;
};
ResummationReport resummation_check(const Composition &c, double u,
                                    int eta_max, double rel_tol = 1e-9);

struct VerifyOrders {
  int K = 2; // macroscopic scattering orders kept
  int L = 2; // microscopic cluster orders kept
};

struct RefinementRow {
  int grid_n = 0;
  double delta1 = 0.0;  // D_1 U
  double delta2 = 0.0;  // D_2 U (delta channel + regular channel)
  double delta21 = 0.0; // (k,l) = (2,1) channel
  double delta22 = 0.0; // (k,l) = (2,2) channel
  double micro1 = 0.0;  // D^1 U
  double micro2 = 0.0;  // D^2 U
  double macro_total = 0.0;
  double micro_total = 0.0;
  double rel_discrepancy = 0.0; // |micro - macro| / |macro|
  double excluded_measure = 0.0;
};

struct SeriesReport {
  int K = 0, L = 0;
  double sigma0 = 0.0; // sum n alpha(0)
  double chi0 = 0.0;
  double convergence_margin = 0.0;
  double residual_tail_bound = 0.0; // |chi(0)|^3 |D_1 U| at finest grid
  std::vector<RefinementRow> rows;
  double extrapolated_discrepancy = 0.0; // relative, grid limit estimate
  double tolerance = 0.0;
  bool passed = false;
};

// Numerical check that the resummed microscopic series reproduces the
// macroscopic scattering expansion order by order on a common set of
// grids.  Vacuum background; the convergence gate must hold
// (ConvergenceGateFailed otherwise).
SeriesReport verify_equivalence(const AtomAt &atom, const BodySpec &body,
                                const BornSpec &spec, VerifyOrders orders,
                                const std::vector<int> &refinements,
                                double tolerance = 0.005);

std::string series_report_json(const SeriesReport &r);
std::string series_report_csv(const SeriesReport &r);

} // namespace cpvdw

#endif
