#ifndef CPVDW_VOLUME_GRID_HPP
#define CPVDW_VOLUME_GRID_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "geometry.hpp"
#include "math3.hpp"

namespace cpvdw {

// Deterministic product quadrature over a body.  Sphere grids are
// Gauss-Legendre in radius and polar angle with a uniform azimuthal
// ring (n, n, 2n nodes); boxes are Gauss-Legendre per axis (n^3).
// Point clouds become their own nodes with unit weight.
struct VolumeGrid {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  double spacing = 0.0; // characteristic node spacing (V/N)^(1/3); 0 for clouds
  double volume = 0.0;  // total weight for volume geometries

  std::size_t size() const { return nodes.size(); }
};

VolumeGrid make_grid(const Geometry &geom, int nodes_per_axis);

struct VolumeResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double excluded_measure = 0.0; // weight of skipped near-diagonal pairs
};

// Single volume integral; pass a coarser grid of the same geometry to get
// an error estimate from the difference.
VolumeResult integrate_volume(const std::function<double(const Vec3 &)> &f,
                              const VolumeGrid &grid,
                              const VolumeGrid *coarse = nullptr);

// Double volume integral over ordered node pairs, excluding pairs closer
// than delta_excl (the excluded product measure is reported, not folded
// back in).  When `symmetric` is set, f(a,b) == f(b,a) is assumed and
// only unordered pairs are evaluated.
VolumeResult
integrate_volume2(const std::function<double(const Vec3 &, const Vec3 &)> &f,
                  const VolumeGrid &grid, double delta_excl,
                  bool symmetric = false, const VolumeGrid *coarse = nullptr);

// Stratified Monte Carlo fallback for the double integral on sphere and
// box geometries.  Deterministic for a fixed seed; the error estimate is
// the one-sigma statistical error.
VolumeResult integrate_volume2_mc(
    const std::function<double(const Vec3 &, const Vec3 &)> &f,
    const Geometry &geom, double delta_excl, long samples, std::uint64_t seed);

} // namespace cpvdw

#endif
