#include "volume_grid.hpp"

#include <cmath>
#include <random>

#include "quadrature.hpp"

namespace cpvdw {

VolumeGrid make_grid(const Geometry &geom, int nodes_per_axis) {
  if (nodes_per_axis < 2 || nodes_per_axis > 64)
    throw InvalidArgument("volume grid nodes per axis out of range [2, 64]");
  VolumeGrid g;

  if (const auto *pc = std::get_if<PointCloudGeom>(&geom)) {
    g.nodes = pc->points;
    g.weights.assign(pc->points.size(), 1.0);
    g.spacing = 0.0;
    g.volume = 0.0;
    return g;
  }

  if (const auto *s = std::get_if<SphereGeom>(&geom)) {
    const int nr = nodes_per_axis;
    const int nc = nodes_per_axis;
    const int np = 2 * nodes_per_axis;
    const GaussRule &rad = gauss_legendre(nr);
    const GaussRule &pol = gauss_legendre(nc);
    g.nodes.reserve(static_cast<std::size_t>(nr) * nc * np);
    g.weights.reserve(g.nodes.capacity());
    for (int i = 0; i < nr; ++i) {
      const double r = s->radius * 0.5 * (rad.x[i] + 1.0);
      const double wr = s->radius * 0.5 * rad.w[i] * r * r;
      for (int j = 0; j < nc; ++j) {
        const double ct = pol.x[j];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double wc = pol.w[j];
        for (int k = 0; k < np; ++k) {
          const double phi = 2.0 * kPi * (k + 0.5) / np;
          const double wp = 2.0 * kPi / np;
          g.nodes.push_back(s->center + Vec3{r * st * std::cos(phi),
                                             r * st * std::sin(phi), r * ct});
          g.weights.push_back(wr * wc * wp);
        }
      }
    }
    g.volume = (4.0 / 3.0) * kPi * s->radius * s->radius * s->radius;
    g.spacing = std::cbrt(g.volume / static_cast<double>(g.size()));
    return g;
  }

  const auto &b = std::get<BoxGeom>(geom);
  const int n = nodes_per_axis;
  const GaussRule &rule = gauss_legendre(n);
  const double ext[3] = {b.extents.x, b.extents.y, b.extents.z};
  const double lo[3] = {b.corner.x, b.corner.y, b.corner.z};
  g.nodes.reserve(static_cast<std::size_t>(n) * n * n);
  g.weights.reserve(g.nodes.capacity());
  for (int i = 0; i < n; ++i) {
    const double x = lo[0] + ext[0] * 0.5 * (rule.x[i] + 1.0);
    const double wx = ext[0] * 0.5 * rule.w[i];
    for (int j = 0; j < n; ++j) {
      const double y = lo[1] + ext[1] * 0.5 * (rule.x[j] + 1.0);
      const double wy = ext[1] * 0.5 * rule.w[j];
      for (int k = 0; k < n; ++k) {
        const double z = lo[2] + ext[2] * 0.5 * (rule.x[k] + 1.0);
        const double wz = ext[2] * 0.5 * rule.w[k];
        g.nodes.push_back({x, y, z});
        g.weights.push_back(wx * wy * wz);
      }
    }
  }
  g.volume = ext[0] * ext[1] * ext[2];
  g.spacing = std::cbrt(g.volume / static_cast<double>(g.size()));
  return g;
}

namespace {

void check_finite(double v, const char *what) {
  if (!std::isfinite(v))
    throw NonFinite(std::string(what) + " returned a non-finite value");
}

double grid_sum(const std::function<double(const Vec3 &)> &f,
                const VolumeGrid &grid) {
  std::vector<double> terms;
  terms.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid.nodes[i]);
    check_finite(v, "volume integrand");
    terms.push_back(grid.weights[i] * v);
  }
  return pairwise_sum(terms);
}

} // namespace

VolumeResult integrate_volume(const std::function<double(const Vec3 &)> &f,
                              const VolumeGrid &grid,
                              const VolumeGrid *coarse) {
  VolumeResult r;
  r.value = grid_sum(f, grid);
  if (coarse)
    r.error_estimate = std::abs(r.value - grid_sum(f, *coarse));
  return r;
}

namespace {

struct Pair2Sum {
  double value = 0.0;
  double excluded = 0.0;
};

Pair2Sum pair_sum(const std::function<double(const Vec3 &, const Vec3 &)> &f,
                  const VolumeGrid &grid, double delta_excl, bool symmetric) {
  Pair2Sum out;
  const std::size_t n = grid.size();
  std::vector<double> rows;
  rows.reserve(n);
  double excluded = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    row.reserve(n);
    const std::size_t jbegin = symmetric ? i + 1 : 0;
    for (std::size_t j = jbegin; j < n; ++j) {
      if (j == i) {
        excluded += grid.weights[i] * grid.weights[j];
        continue;
      }
      if (norm(grid.nodes[i] - grid.nodes[j]) < delta_excl) {
        excluded += (symmetric ? 2.0 : 1.0) * grid.weights[i] * grid.weights[j];
        continue;
      }
      const double v = f(grid.nodes[i], grid.nodes[j]);
      check_finite(v, "two-point volume integrand");
      row.push_back((symmetric ? 2.0 : 1.0) * grid.weights[i] *
                    grid.weights[j] * v);
    }
    rows.push_back(pairwise_sum(row));
  }
  if (symmetric) // the diagonal itself is always excluded
    for (std::size_t i = 0; i < n; ++i)
      excluded += grid.weights[i] * grid.weights[i];
  out.value = pairwise_sum(rows);
  out.excluded = excluded;
  return out;
}

} // namespace

VolumeResult
integrate_volume2(const std::function<double(const Vec3 &, const Vec3 &)> &f,
                  const VolumeGrid &grid, double delta_excl, bool symmetric,
                  const VolumeGrid *coarse) {
  if (!(delta_excl >= 0.0))
    throw InvalidArgument("delta_excl must be >= 0");
  VolumeResult r;
  Pair2Sum fine = pair_sum(f, grid, delta_excl, symmetric);
  r.value = fine.value;
  r.excluded_measure = fine.excluded;
  if (coarse) {
    Pair2Sum c = pair_sum(f, *coarse, delta_excl, symmetric);
    r.error_estimate = std::abs(r.value - c.value);
  }
  return r;
}

namespace {

// Uniform point in the unit cube -> uniform point in the body.
Vec3 map_unit(const Geometry &geom, double a, double b, double c) {
  if (const auto *s = std::get_if<SphereGeom>(&geom)) {
    const double r = s->radius * std::cbrt(a);
    const double ct = 2.0 * b - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = 2.0 * kPi * c;
    return s->center +
           Vec3{r * st * std::cos(phi), r * st * std::sin(phi), r * ct};
  }
  const auto &box = std::get<BoxGeom>(geom);
  return {box.corner.x + a * box.extents.x, box.corner.y + b * box.extents.y,
          box.corner.z + c * box.extents.z};
}

double geometry_volume(const Geometry &geom) {
  if (const auto *s = std::get_if<SphereGeom>(&geom))
    return (4.0 / 3.0) * kPi * s->radius * s->radius * s->radius;
  const auto &b = std::get<BoxGeom>(geom);
  return b.extents.x * b.extents.y * b.extents.z;
}

} // namespace

VolumeResult integrate_volume2_mc(
    const std::function<double(const Vec3 &, const Vec3 &)> &f,
    const Geometry &geom, double delta_excl, long samples,
    std::uint64_t seed) {
  if (std::holds_alternative<PointCloudGeom>(geom))
    throw InvalidArgument("Monte Carlo sampling needs a volume geometry");
  if (samples < 64)
    throw InvalidArgument("Monte Carlo sample count must be >= 64");

  // Jittered 6d lattice: one sample per cell of an m^6 grid, remainder
  // drawn plain-uniform.  Everything flows from the seed, so runs are
  // reproducible.
  const long m = std::max(1L, static_cast<long>(std::floor(
                                  std::pow(static_cast<double>(samples),
                                           1.0 / 6.0))));
  const long lattice = m * m * m * m * m * m;
  const long extra = samples - lattice;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double v2 = geometry_volume(geom) * geometry_volume(geom);
  double sum = 0.0, sum2 = 0.0;
  long kept = 0, excluded = 0;

  auto accumulate = [&](double c[6]) {
    const Vec3 s1 = map_unit(geom, c[0], c[1], c[2]);
    const Vec3 s2 = map_unit(geom, c[3], c[4], c[5]);
    if (norm(s1 - s2) < delta_excl) {
      ++excluded;
      return;
    }
    const double v = f(s1, s2);
    check_finite(v, "Monte Carlo integrand");
    sum += v;
    sum2 += v * v;
    ++kept;
  };

  long idx[6] = {0, 0, 0, 0, 0, 0};
  for (long count = 0; count < lattice; ++count) {
    double c[6];
    for (int d = 0; d < 6; ++d)
      c[d] = (idx[d] + unit(rng)) / static_cast<double>(m);
    accumulate(c);
    for (int d = 5; d >= 0; --d) {
      if (++idx[d] < m)
        break;
      idx[d] = 0;
    }
  }
  for (long count = 0; count < extra; ++count) {
    double c[6];
    for (int d = 0; d < 6; ++d)
      c[d] = unit(rng);
    accumulate(c);
  }

  VolumeResult r;
  const long total = kept + excluded;
  if (kept == 0) {
    r.excluded_measure = v2;
    return r;
  }
  const double mean = sum / kept;
  const double var = std::max(0.0, sum2 / kept - mean * mean);
  const double kept_fraction = static_cast<double>(kept) / total;
  r.value = v2 * kept_fraction * mean;
  r.error_estimate = v2 * kept_fraction * std::sqrt(var / kept);
  r.excluded_measure = v2 * (1.0 - kept_fraction);
  return r;
}

} // namespace cpvdw
