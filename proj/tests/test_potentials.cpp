#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "green.hpp"
#include "permutations.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"

using namespace cpvdw;

namespace {

AtomSpecies one_osc(double omega, double d2) {
  return AtomSpecies{"t", {{omega, d2}}};
}

const Background kVac = Background::make_vacuum();

// static dipole tensor T_ij = (3 n n - I)/rho^3
Mat3 dipole_tensor(const Vec3 &a, const Vec3 &b) {
  const Vec3 d = b - a;
  const double rho = norm(d);
  const Vec3 n = (1.0 / rho) * d;
  Mat3 t = 3.0 * outer(n, n) - Mat3::identity();
  return (1.0 / (rho * rho * rho)) * t;
}

} // namespace

TEST_CASE("profile function anchors") {
  CHECK(g_ee(0.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(g_em(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  const double e2 = std::exp(-2.0);
  CHECK(g_ee(1.0) == doctest::Approx(34.0 * e2).epsilon(1e-15));
  CHECK(g_em(1.0) == doctest::Approx(8.0 * e2).epsilon(1e-15));
  // monotone decay of both profiles
  CHECK(g_ee(2.0) < g_ee(1.0));
  CHECK(g_em(2.0) < g_em(1.0));
}

TEST_CASE("pair potential equals its radial-profile reduction in vacuum") {
  AtomAt a{one_osc(1.0, 1.5), {0.0, 0.0, 0.0}};
  AtomAt b{one_osc(2.0, 0.8), {1.1, -0.4, 2.0}};
  const double r = norm(b.position - a.position);
  QuadratureSpec spec;

  QuadResult full = vdw_pair_general(a, b, kVac, spec);

  // independent route through the scalar profile
  QuadratureSpec ps;
  ps.u0 = 1.0 / (2.0 * r);
  const double pref = -1.0 / (32.0 * kPi * kPi * kPi * std::pow(r, 6));
  QuadResult prof = integrate_semiaxis(
      [&](double u) {
        return polarizability(a.species, u) * polarizability(b.species, u) *
               g_ee(u * r);
      },
      ps);
  CHECK(full.value == doctest::Approx(pref * prof.value).epsilon(1e-9));
}

TEST_CASE("nonretarded vacuum pair potential: analytic oracle") {
  // single-oscillator atoms: U -> -d2A d2B / (24 pi^2 (wA+wB) r^6)
  const double wa = 1.0, db2 = 2.0, wb = 1.7, da2 = 1.2;
  AtomAt a{one_osc(wa, da2), {0.0, 0.0, 0.0}};
  const double r = 1e-3; // x = 1e-3
  AtomAt b{one_osc(wb, db2), {0.0, 0.0, r}};
  QuadratureSpec spec;
  QuadResult u = vdw_pair_general(a, b, kVac, spec);
  const double oracle =
      -da2 * db2 / (24.0 * kPi * kPi * (wa + wb) * std::pow(r, 6));
  CHECK(u.value == doctest::Approx(oracle).epsilon(0.01));

  // printed nonretarded form hits the same number without the 1% slack
  MediumModel trivial{"v", {}, {}};
  QuadResult nr = vdw_pair_bulk_nonretarded(a, b, trivial, spec);
  CHECK(nr.value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("retarded vacuum pair potential") {
  AtomAt a{one_osc(1.0, 1.5), {0.0, 0.0, 0.0}};
  const double r = 1e3;
  AtomAt b{one_osc(1.0, 1.5), {0.0, 0.0, r}};
  QuadratureSpec spec;
  QuadResult u = vdw_pair_general(a, b, kVac, spec);
  const double a0 = polarizability(a.species, 0.0);
  const double oracle =
      -23.0 * a0 * a0 / (64.0 * kPi * kPi * kPi * std::pow(r, 7));
  CHECK(u.value == doctest::Approx(oracle).epsilon(0.01));

  MediumModel trivial{"v", {}, {}};
  CHECK(vdw_pair_bulk_retarded(a, b, trivial) ==
        doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("bulk pair potential: dyadic route vs printed profile formula") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(0.3, 2.5);
  QuadratureSpec spec;
  for (int i = 0; i < 20; ++i) {
    AtomAt a{one_osc(ud(rng), ud(rng)), {0.0, 0.0, 0.0}};
    AtomAt b{one_osc(ud(rng), ud(rng)), {0.0, 0.0, 0.5 + 3.0 * ud(rng)}};
    MediumModel m{"m",
                  {{ud(rng), ud(rng), 0.2 * ud(rng)}},
                  {{0.5 * ud(rng), ud(rng), 0.0}}};
    QuadResult dyadic = vdw_pair_general(a, b, Background::make_bulk(m), spec);
    QuadResult profile = vdw_pair_bulk(a, b, m, spec);
    CHECK(dyadic.value ==
          doctest::Approx(profile.value).epsilon(1e-8));
  }
}

TEST_CASE("a transparent dielectric screens the pair interaction") {
  AtomAt a{one_osc(1.0, 1.5), {0.0, 0.0, 0.0}};
  MediumModel m{"m", {{1.0, 1.0, 0.0}}, {}}; // eps(0) = 2
  QuadratureSpec spec;
  for (double r : {0.05, 0.5, 2.0, 20.0, 500.0}) {
    AtomAt b{one_osc(1.0, 1.5), {0.0, 0.0, r}};
    QuadResult vac = vdw_pair_general(a, b, kVac, spec);
    QuadResult med = vdw_pair_general(a, b, Background::make_bulk(m), spec);
    CHECK(vac.value < 0.0);
    CHECK(med.value < 0.0);
    CHECK(std::abs(med.value) < std::abs(vac.value));
  }
}

TEST_CASE("atom-sphere potential recovers its limits") {
  AtomAt atom{one_osc(1.0, 1.5), {0.0, 0.0, 0.0}};
  MediumModel diel{"d", {{1.0, 1.0, 0.0}}, {}};
  MediumModel mag{"g", {}, {{1.0, 1.0, 0.0}}};
  QuadratureSpec spec;

  SUBCASE("electric nonretarded") {
    SmallSphere s{1e-5, diel, {0.0, 0.0, 1e-3}};
    atom.position = Vec3{0.0, 0.0, 0.0};
    QuadResult full = cp_sphere(atom, s, spec);
    QuadResult limit = cp_sphere_nonretarded_electric(atom, s, spec);
    CHECK(full.value == doctest::Approx(limit.value).epsilon(0.01));
    CHECK(full.value < 0.0);
  }

  SUBCASE("magnetic nonretarded is repulsive") {
    SmallSphere s{1e-5, mag, {0.0, 0.0, 1e-3}};
    QuadResult full = cp_sphere(atom, s, spec);
    QuadResult limit = cp_sphere_nonretarded_magnetic(atom, s, spec);
    CHECK(full.value > 0.0);
    CHECK(full.value == doctest::Approx(limit.value).epsilon(0.01));
  }

  SUBCASE("retarded closed form") {
    SmallSphere s{1.0, diel, {0.0, 0.0, 1e3}};
    QuadResult full = cp_sphere(atom, s, spec);
    const double closed = cp_sphere_retarded(atom, s);
    CHECK(full.value == doctest::Approx(closed).epsilon(0.01));
  }
}

TEST_CASE("atom-sphere geometry guards") {
  AtomAt atom{one_osc(1.0, 1.5), {0.0, 0.0, 1.0}};
  MediumModel diel{"d", {{1.0, 1.0, 0.0}}, {}};
  QuadratureSpec spec;

  SmallSphere tight{0.25, diel, {0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(cp_sphere(atom, tight, spec), GeometryViolation);

  SmallSphere marginal{0.15, diel, {0.0, 0.0, 0.0}};
  QuadResult warn = cp_sphere(atom, marginal, spec);
  CHECK(warn.warning);

  SmallSphere fine{0.05, diel, {0.0, 0.0, 0.0}};
  QuadResult ok = cp_sphere(atom, fine, spec);
  CHECK_FALSE(ok.warning);

  SmallSphere at_center{0.05, diel, {0.0, 0.0, 1.0}};
  CHECK_THROWS_AS(cp_sphere(atom, at_center, spec), CoincidentPoints);
}

TEST_CASE("two-atom reduction of the many-atom series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  std::uniform_real_distribution<double> wd(0.5, 2.0);
  QuadratureSpec spec;
  for (int i = 0; i < 10; ++i) {
    AtomAt a{one_osc(wd(rng), wd(rng)), {ud(rng), ud(rng), ud(rng)}};
    AtomAt b{one_osc(wd(rng), wd(rng)), {ud(rng), ud(rng), ud(rng)}};
    if (norm(b.position - a.position) < 0.3) {
      b.position = a.position + Vec3{0.0, 0.0, 1.0};
    }
    std::vector<AtomAt> atoms{a, b};
    QuadResult many = vdw_many_atom(atoms, kVac, spec);
    QuadResult pair = vdw_pair_general(a, b, kVac, spec);
    CHECK(many.value == doctest::Approx(pair.value).epsilon(1e-10));
  }
}

TEST_CASE("triple-dipole interaction of an equilateral triangle") {
  // nonretarded j = 3 oracle:
  //   U3 -> -(1/(64 pi^4)) (int alpha^3 du) Tr[T01 T12 T20],
  // with int alpha^3 du = pi d2^3 / (18 w^2) for one oscillator
  const double w = 1.0, d2 = 1.5, L = 1e-2;
  std::vector<AtomAt> atoms{
      {one_osc(w, d2), {0.0, 0.0, 0.0}},
      {one_osc(w, d2), {L, 0.0, 0.0}},
      {one_osc(w, d2), {0.5 * L, 0.5 * std::sqrt(3.0) * L, 0.0}}};
  QuadratureSpec spec;
  QuadResult u3 = vdw_many_atom(atoms, kVac, spec);

  Mat3 prod = dipole_tensor(atoms[0].position, atoms[1].position) *
              dipole_tensor(atoms[1].position, atoms[2].position) *
              dipole_tensor(atoms[2].position, atoms[0].position);
  const double ia3 = kPi * d2 * d2 * d2 / (18.0 * w * w);
  const double oracle =
      -(1.0 / (64.0 * kPi * kPi * kPi * kPi)) * ia3 * prod.trace();

  CHECK(u3.value == doctest::Approx(oracle).epsilon(0.02));
  // the triangle configuration is repulsive at this order
  CHECK(u3.value > 0.0);
}

TEST_CASE("chain traces: cyclic and reversal invariance, class coverage") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ud(-1.5, 1.5);
  const double u = 0.8;

  auto chain_trace = [&](const std::vector<Vec3> &p,
                         const std::vector<int> &ord) {
    const std::size_t j = ord.size();
    Mat3 prod = split_delta(kVac, p[static_cast<std::size_t>(ord[0])],
                            p[static_cast<std::size_t>(ord[1])], u);
    for (std::size_t i = 1; i < j; ++i) {
      const int from = ord[i];
      const int to = ord[(i + 1) % j];
      prod = prod * split_delta(kVac, p[static_cast<std::size_t>(from)],
                                p[static_cast<std::size_t>(to)], u);
    }
    return prod.trace();
  };

  std::vector<Vec3> pts;
  for (int i = 0; i < 4; ++i)
    pts.push_back({ud(rng), ud(rng), ud(rng)});

  // cyclic rotation
  const double t0 = chain_trace(pts, {0, 1, 2, 3});
  CHECK(chain_trace(pts, {1, 2, 3, 0}) == doctest::Approx(t0).epsilon(1e-13));
  CHECK(chain_trace(pts, {2, 3, 0, 1}) == doctest::Approx(t0).epsilon(1e-13));
  // reversal
  CHECK(chain_trace(pts, {0, 3, 2, 1}) == doctest::Approx(t0).epsilon(1e-13));

  // full tail-permutation sum equals twice the representative sum (j >= 3)
  for (int j : {3, 4}) {
    std::vector<Vec3> p(pts.begin(), pts.begin() + j);
    std::vector<int> tail;
    for (int i = 1; i < j; ++i)
      tail.push_back(i);
    double full = 0.0;
    do {
      std::vector<int> ord{0};
      ord.insert(ord.end(), tail.begin(), tail.end());
      full += chain_trace(p, ord);
    } while (std::next_permutation(tail.begin(), tail.end()));

    double reps = 0.0;
    for (const auto &rep : perm_class_reps(j).reps)
      reps += chain_trace(p, rep);
    CHECK(reps == doctest::Approx(full / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("many-atom argument guards") {
  QuadratureSpec spec;
  std::vector<AtomAt> one{{one_osc(1.0, 1.0), {0.0, 0.0, 0.0}}};
  CHECK_THROWS_AS(vdw_many_atom(one, kVac, spec), UnsupportedOrder);

  std::vector<AtomAt> six;
  for (int i = 0; i < 6; ++i)
    six.push_back({one_osc(1.0, 1.0), {double(i), 0.0, 0.0}});
  CHECK_THROWS_AS(vdw_many_atom(six, kVac, spec), UnsupportedOrder);

  std::vector<AtomAt> close{{one_osc(1.0, 1.0), {0.0, 0.0, 0.0}},
                            {one_osc(1.0, 1.0), {0.0, 0.0, 1e-12}}};
  CHECK_THROWS_AS(vdw_many_atom(close, kVac, spec), CoincidentPoints);
}

TEST_CASE("finite-difference forces on the power-law forms") {
  AtomAt a{one_osc(1.0, 1.5), {0.0, 0.0, 0.0}};
  MediumModel trivial{"v", {}, {}};
  QuadratureSpec spec;

  SUBCASE("r^-6 law") {
    // radial force of the nonretarded pair form: F = -dU/dr = 6 U / r
    const double r0 = 2.0;
    auto pot = [&](const Vec3 &p) {
      AtomAt b{one_osc(1.0, 1.5), p};
      return vdw_pair_bulk_nonretarded(a, b, trivial, spec).value;
    };
    ForceResult f = force(pot, {0.0, 0.0, r0}, 1e-2 * r0);
    const double u0 = pot({0.0, 0.0, r0});
    CHECK(f.force.z == doctest::Approx(6.0 * u0 / r0).epsilon(1e-6));
    CHECK(std::abs(f.force.x) < 1e-10 * std::abs(f.force.z));
    CHECK(std::abs(f.force.y) < 1e-10 * std::abs(f.force.z));
    // attraction: force points toward the partner at the origin
    CHECK(f.force.z < 0.0);
  }

  SUBCASE("r^-7 law") {
    MediumModel diel{"d", {{1.0, 1.0, 0.0}}, {}};
    SmallSphere s{0.5, diel, {0.0, 0.0, 0.0}};
    auto pot = [&](const Vec3 &p) {
      AtomAt at{one_osc(1.0, 1.5), p};
      return cp_sphere_retarded(at, s);
    };
    const double r0 = 50.0;
    ForceResult f = force(pot, {0.0, 0.0, r0}, 1e-2 * r0);
    const double u0 = pot({0.0, 0.0, r0});
    CHECK(f.force.z == doctest::Approx(7.0 * u0 / r0).epsilon(1e-6));
    CHECK(f.force.z < 0.0);
  }

  SUBCASE("full integral potential matches the power law loosely") {
    const double r0 = 1e-3;
    auto pot = [&](const Vec3 &p) {
      AtomAt b{one_osc(1.0, 1.5), p};
      return vdw_pair_general(a, b, kVac, spec).value;
    };
    ForceResult f = force(pot, {0.0, 0.0, r0}, 1e-2 * r0);
    const double u0 = pot({0.0, 0.0, r0});
    CHECK(f.force.z == doctest::Approx(6.0 * u0 / r0).epsilon(1e-3));
  }

  CHECK_THROWS_AS(force([](const Vec3 &) { return 0.0; }, {0, 0, 0}, 0.0),
                  InvalidArgument);
}

TEST_CASE("characteristic frequency picks the smallest scale") {
  AtomSpecies a{"a", {{2.0, 1.0}, {0.7, 0.5}}};
  MediumModel m{"m", {{1.0, 1.3, 0.0}}, {{1.0, 0.4, 0.0}}};
  const AtomSpecies sp[] = {a};
  const MediumModel md[] = {m};
  CHECK(characteristic_frequency(sp, md) == doctest::Approx(0.4));
  CHECK(characteristic_frequency(sp, {}) == doctest::Approx(0.7));
}
