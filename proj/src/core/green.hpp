#ifndef CPVDW_GREEN_HPP
#define CPVDW_GREEN_HPP

#include "math3.hpp"
#include "response.hpp"

namespace cpvdw {

// Homogeneous background a dyadic Green tensor lives in.
struct Background {
  enum class Kind { vacuum, bulk };
  Kind kind = Kind::vacuum;
  MediumModel medium; // used only when kind == bulk

  static Background make_vacuum() { return Background{}; }
  static Background make_bulk(MediumModel m) {
    Background b;
    b.kind = Kind::bulk;
    b.medium = std::move(m);
    return b;
  }
};

// Free-space dyadic Green tensor of the vector Helmholtz operator at
// imaginary frequency u > 0 (natural units, c = 1).  With x = u*rho and
// n = (r - r_prime)/rho it is real and exponentially damped:
//   G = e^{-x}/(4 pi rho) [ (1 + (1+x)/x^2) I - ((3 + 3x + x^2)/x^2) n n ].
// The coincidence-point delta contribution is not included; split_delta
// documents the bookkeeping.
Mat3 green_vacuum(const Vec3 &r, const Vec3 &r_prime, double u);

// Bulk magnetodielectric medium: mu(iu) times the vacuum form evaluated
// at the medium wave number n(iu)*u.
Mat3 green_bulk(const Vec3 &r, const Vec3 &r_prime, double u,
                const MediumModel &m);

Mat3 green(const Background &bg, const Vec3 &r, const Vec3 &r_prime, double u);

// The background tensor splits as
//   G(r,r',iu) = (1/3) (1/u^2) delta(r - r') I + H(r,r',iu)
// (vacuum normalization).  For r != r' the delta part vanishes and
// H == G; at coincident points H is undefined and this throws
// CoincidentPoints.  Quadratures over body volumes must route every
// two-point evaluation through here so the delta channel is never
// double counted: its contribution is always added analytically.
Mat3 split_delta(const Background &bg, const Vec3 &r, const Vec3 &r_prime,
                 double u);

} // namespace cpvdw

#endif
