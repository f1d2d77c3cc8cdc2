#include "potentials.hpp"

#include <cmath>
#include <limits>

#include "constants.hpp"
#include "errors.hpp"
#include "permutations.hpp"

namespace cpvdw {

double g_ee(double x) {
  return 2.0 * std::exp(-2.0 * x) *
         (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x))));
}

double g_em(double x) {
  const double p = 1.0 + x;
  return 2.0 * std::exp(-2.0 * x) * p * p; // 1 + 2x + x^2
}

namespace {

constexpr double kPi3 = kPi * kPi * kPi;

double default_u0(const QuadratureSpec &spec, double r_char) {
  if (spec.u0 > 0.0)
    return spec.u0;
  return 1.0 / (2.0 * r_char); // c = 1
}

double sphere_separation(const AtomAt &atom, const SmallSphere &sphere,
                         bool &warn) {
  if (!(sphere.radius > 0.0))
    throw InvalidArgument("sphere radius must be > 0");
  const double r = norm(atom.position - sphere.center);
  if (r < kMinSeparation)
    throw CoincidentPoints("atom sits at the sphere center");
  const double ratio = sphere.radius / r;
  if (ratio >= 0.2)
    throw GeometryViolation(
        "sphere radius exceeds 0.2 of the atom distance; the "
        "long-wavelength sphere response does not apply");
  warn = ratio > 0.1;
  return r;
}

} // namespace

QuadResult cp_sphere(const AtomAt &atom, const SmallSphere &sphere,
                     const QuadratureSpec &spec) {
  bool warn = false;
  const double r = sphere_separation(atom, sphere, warn);
  QuadratureSpec s = spec;
  s.u0 = default_u0(spec, r);

  auto integrand = [&](double u) {
    const double aA = polarizability(atom.species, u);
    const SpherePolarizabilities sp =
        sphere_polarizabilities(sphere.radius, sphere.medium, u);
    const double x = u * r;
    return aA * (g_ee(x) * sp.alpha_e - x * x * g_em(x) * sp.alpha_m);
  };
  QuadResult res = integrate_semiaxis(integrand, s);
  const double r6 = std::pow(r, 6);
  res.value *= -1.0 / (32.0 * kPi3 * r6);
  res.error_estimate *= 1.0 / (32.0 * kPi3 * r6);
  res.warning = warn;
  return res;
}

QuadResult cp_sphere_nonretarded_electric(const AtomAt &atom,
                                          const SmallSphere &sphere,
                                          const QuadratureSpec &spec) {
  bool warn = false;
  const double r = sphere_separation(atom, sphere, warn);
  QuadratureSpec s = spec;
  // The integrand decays only through the response functions here, so
  // scale with the slowest transition instead of the geometry.
  if (s.u0 <= 0.0) {
    const AtomSpecies sp_arr[1] = {atom.species};
    const MediumModel md_arr[1] = {sphere.medium};
    s.u0 = characteristic_frequency(sp_arr, md_arr);
  }
  auto integrand = [&](double u) {
    return polarizability(atom.species, u) *
           sphere_polarizabilities(sphere.radius, sphere.medium, u).alpha_e;
  };
  QuadResult res = integrate_semiaxis(integrand, s);
  const double r6 = std::pow(r, 6);
  res.value *= -3.0 / (16.0 * kPi3 * r6);
  res.error_estimate *= 3.0 / (16.0 * kPi3 * r6);
  res.warning = warn;
  return res;
}

QuadResult cp_sphere_nonretarded_magnetic(const AtomAt &atom,
                                          const SmallSphere &sphere,
                                          const QuadratureSpec &spec) {
  bool warn = false;
  const double r = sphere_separation(atom, sphere, warn);
  QuadratureSpec s = spec;
  if (s.u0 <= 0.0) {
    const AtomSpecies sp_arr[1] = {atom.species};
    const MediumModel md_arr[1] = {sphere.medium};
    s.u0 = characteristic_frequency(sp_arr, md_arr);
  }
  auto integrand = [&](double u) {
    return u * u * polarizability(atom.species, u) *
           sphere_polarizabilities(sphere.radius, sphere.medium, u).alpha_m;
  };
  QuadResult res = integrate_semiaxis(integrand, s);
  const double r4 = std::pow(r, 4);
  res.value *= 1.0 / (16.0 * kPi3 * r4);
  res.error_estimate *= 1.0 / (16.0 * kPi3 * r4);
  res.warning = warn;
  return res;
}

double cp_sphere_retarded(const AtomAt &atom, const SmallSphere &sphere) {
  bool warn = false;
  const double r = sphere_separation(atom, sphere, warn);
  const double a0 = polarizability(atom.species, 0.0);
  const SpherePolarizabilities sp =
      sphere_polarizabilities(sphere.radius, sphere.medium, 0.0);
  return -a0 * (23.0 * sp.alpha_e - 7.0 * sp.alpha_m) /
         (64.0 * kPi3 * std::pow(r, 7));
}

namespace {

double pair_distance(const AtomAt &a, const AtomAt &b) {
  const double r = norm(a.position - b.position);
  if (r < kMinSeparation)
    throw CoincidentPoints("atoms closer than the coincidence threshold");
  return r;
}

} // namespace

QuadResult vdw_pair_general(const AtomAt &a, const AtomAt &b,
                            const Background &bg, const QuadratureSpec &spec) {
  const double r = pair_distance(a, b);
  QuadratureSpec s = spec;
  s.u0 = default_u0(spec, r);
  auto integrand = [&](double u) {
    const Mat3 gab = green(bg, a.position, b.position, u);
    const Mat3 gba = green(bg, b.position, a.position, u);
    return std::pow(u, 4) * polarizability(a.species, u) *
           polarizability(b.species, u) * trace_product(gab, gba);
  };
  QuadResult res = integrate_semiaxis(integrand, s);
  res.value *= -1.0 / (2.0 * kPi);
  res.error_estimate *= 1.0 / (2.0 * kPi);
  return res;
}

QuadResult vdw_pair_bulk(const AtomAt &a, const AtomAt &b,
                         const MediumModel &medium,
                         const QuadratureSpec &spec) {
  const double r = pair_distance(a, b);
  QuadratureSpec s = spec;
  s.u0 = default_u0(spec, r);
  auto integrand = [&](double u) {
    const double eps = permittivity(medium, u);
    const double n = refractive_index(medium, u);
    return polarizability(a.species, u) * polarizability(b.species, u) *
           g_ee(n * u * r) / (eps * eps);
  };
  QuadResult res = integrate_semiaxis(integrand, s);
  const double r6 = std::pow(r, 6);
  res.value *= -1.0 / (32.0 * kPi3 * r6);
  res.error_estimate *= 1.0 / (32.0 * kPi3 * r6);
  return res;
}

QuadResult vdw_pair_bulk_nonretarded(const AtomAt &a, const AtomAt &b,
                                     const MediumModel &medium,
                                     const QuadratureSpec &spec) {
  const double r = pair_distance(a, b);
  QuadratureSpec s = spec;
  if (s.u0 <= 0.0) {
    const AtomSpecies sp_arr[2] = {a.species, b.species};
    const MediumModel md_arr[1] = {medium};
    s.u0 = characteristic_frequency(sp_arr, md_arr);
  }
  auto integrand = [&](double u) {
    const double eps = permittivity(medium, u);
    return polarizability(a.species, u) * polarizability(b.species, u) /
           (eps * eps);
  };
  QuadResult res = integrate_semiaxis(integrand, s);
  const double r6 = std::pow(r, 6);
  res.value *= -3.0 / (16.0 * kPi3 * r6);
  res.error_estimate *= 3.0 / (16.0 * kPi3 * r6);
  return res;
}

double vdw_pair_bulk_retarded(const AtomAt &a, const AtomAt &b,
                              const MediumModel &medium) {
  const double r = pair_distance(a, b);
  const double eps0 = permittivity(medium, 0.0);
  const double n0 = refractive_index(medium, 0.0);
  return -23.0 * polarizability(a.species, 0.0) *
         polarizability(b.species, 0.0) /
         (64.0 * kPi3 * eps0 * eps0 * n0 * std::pow(r, 7));
}

QuadResult vdw_many_atom(std::span<const AtomAt> atoms, const Background &bg,
                         const QuadratureSpec &spec) {
  const int j = static_cast<int>(atoms.size());
  if (j < 2 || j > 5)
    throw UnsupportedOrder("many-atom potential implemented for 2 <= j <= 5");

  double rmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < j; ++i)
    for (int k = i + 1; k < j; ++k)
      rmin = std::min(rmin, norm(atoms[i].position - atoms[k].position));
  if (rmin < kMinSeparation)
    throw CoincidentPoints("two atoms closer than the coincidence threshold");

  const PermClassReps classes = perm_class_reps(j);
  QuadratureSpec s = spec;
  s.u0 = default_u0(spec, rmin);

  auto integrand = [&](double u) {
    // Cache the two-point tensors for all ordered site pairs; the
    // reverse direction is the transpose by reciprocity.
    Mat3 h[5][5];
    for (int i = 0; i < j; ++i)
      for (int k = i + 1; k < j; ++k) {
        h[i][k] = split_delta(bg, atoms[i].position, atoms[k].position, u);
        h[k][i] = h[i][k].transposed();
      }
    double chain_sum = 0.0;
    for (const auto &rep : classes.reps) {
      Mat3 prod = h[rep[0]][rep[1]];
      for (int e = 1; e < j - 1; ++e)
        prod = prod * h[rep[e]][rep[e + 1]];
      chain_sum += trace_product(prod, h[rep[j - 1]][rep[0]]);
    }
    double alphas = 1.0;
    for (const auto &atom : atoms)
      alphas *= polarizability(atom.species, u);
    return std::pow(u, 2 * j) * alphas * chain_sum;
  };

  QuadResult res = integrate_semiaxis(integrand, s);
  const double sign = (j % 2 == 0) ? -1.0 : 1.0; // (-1)^(j-1)
  const double pref = sign / ((j == 2 ? 2.0 : 1.0) * kPi);
  res.value *= pref;
  res.error_estimate *= std::abs(pref);
  return res;
}

ForceResult force(const std::function<double(const Vec3 &)> &potential,
                  const Vec3 &r, double step) {
  if (!(step > 0.0))
    throw InvalidArgument("finite-difference step must be > 0");
  ForceResult out;
  double *f[3] = {&out.force.x, &out.force.y, &out.force.z};
  double *e[3] = {&out.error_estimate.x, &out.error_estimate.y,
                  &out.error_estimate.z};
  const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int d = 0; d < 3; ++d) {
    auto central = [&](double h) {
      const double up = potential(r + h * axes[d]);
      const double dn = potential(r - h * axes[d]);
      if (!std::isfinite(up) || !std::isfinite(dn))
        throw NonFinite("potential returned a non-finite value during "
                        "finite differencing");
      return (up - dn) / (2.0 * h);
    };
    const double d1 = central(step);
    const double d2 = central(0.5 * step);
    const double rich = (4.0 * d2 - d1) / 3.0;
    *f[d] = -rich;
    *e[d] = std::abs(rich - d2);
  }
  return out;
}

double characteristic_frequency(std::span<const AtomSpecies> species,
                                std::span<const MediumModel> media) {
  double w = std::numeric_limits<double>::infinity();
  for (const auto &s : species)
    for (const auto &o : s.oscillators)
      w = std::min(w, o.omega);
  for (const auto &m : media) {
    for (const auto &p : m.eps_poles)
      w = std::min(w, p.omega_t);
    for (const auto &p : m.mu_poles)
      w = std::min(w, p.omega_t);
  }
  if (!std::isfinite(w))
    throw InvalidArgument("no oscillators available to set a frequency scale");
  return w;
}

} // namespace cpvdw
