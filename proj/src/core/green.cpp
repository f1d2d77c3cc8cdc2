#include "green.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace cpvdw {

namespace {

// Shared helper: the vacuum functional form at effective wave number k,
// scaled by `scale`.  x = k * rho must be > 0.
Mat3 damped_dyadic(const Vec3 &rho_vec, double rho, double k, double scale) {
  const double x = k * rho;
  const double inv_x2 = 1.0 / (x * x);
  const double pref = scale * std::exp(-x) / (4.0 * kPi * rho);
  const double a = 1.0 + (1.0 + x) * inv_x2;
  const double b = -(3.0 + 3.0 * x + x * x) * inv_x2;
  const Vec3 n = (1.0 / rho) * rho_vec;
  Mat3 g = outer(n, n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g.m[i][j] *= b * pref;
  g.m[0][0] += pref * a;
  g.m[1][1] += pref * a;
  g.m[2][2] += pref * a;
  return g;
}

double separation(const Vec3 &r, const Vec3 &r_prime, Vec3 &rho_vec) {
  rho_vec = r - r_prime;
  const double rho = norm(rho_vec);
  if (rho < kMinSeparation)
    throw CoincidentPoints("field and source points closer than the "
                           "coincidence threshold");
  return rho;
}

void require_positive_u(double u) {
  if (!(u > 0.0))
    throw InvalidArgument("imaginary frequency u must be > 0");
}

} // namespace

Mat3 green_vacuum(const Vec3 &r, const Vec3 &r_prime, double u) {
  require_positive_u(u);
  Vec3 rho_vec;
  const double rho = separation(r, r_prime, rho_vec);
  return damped_dyadic(rho_vec, rho, u, 1.0);
}

Mat3 green_bulk(const Vec3 &r, const Vec3 &r_prime, double u,
                const MediumModel &m) {
  require_positive_u(u);
  Vec3 rho_vec;
  const double rho = separation(r, r_prime, rho_vec);
  const double mu = permeability(m, u);
  const double n = refractive_index(m, u);
  return damped_dyadic(rho_vec, rho, n * u, mu);
}

Mat3 green(const Background &bg, const Vec3 &r, const Vec3 &r_prime,
           double u) {
  if (bg.kind == Background::Kind::bulk)
    return green_bulk(r, r_prime, u, bg.medium);
  return green_vacuum(r, r_prime, u);
}

Mat3 split_delta(const Background &bg, const Vec3 &r, const Vec3 &r_prime,
                 double u) {
  // Off the diagonal the regular part equals the full tensor; green()
  // already rejects coincident points.
  return green(bg, r, r_prime, u);
}

} // namespace cpvdw
