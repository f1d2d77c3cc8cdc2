#ifndef CPVDW_GEOMETRY_HPP
#define CPVDW_GEOMETRY_HPP

#include <algorithm>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "math3.hpp"
#include "response.hpp"

namespace cpvdw {

struct SphereGeom {
  Vec3 center;
  double radius = 0.0;
};

struct BoxGeom {
  Vec3 corner;  // minimum corner
  Vec3 extents; // edge lengths, all > 0
};

struct PointCloudGeom {
  std::vector<Vec3> points;
};

using Geometry = std::variant<SphereGeom, BoxGeom, PointCloudGeom>;

// A material body: geometry plus a body-wide composition (each entry a
// species at constant number density, or per-point weight for clouds).
struct BodySpec {
  std::string name;
  Geometry geometry;
  Composition composition;

  void validate() const {
    if (std::holds_alternative<SphereGeom>(geometry)) {
      if (!(std::get<SphereGeom>(geometry).radius > 0.0))
        throw ConfigError("body '" + name + "': sphere radius must be > 0");
    } else if (std::holds_alternative<BoxGeom>(geometry)) {
      const auto &b = std::get<BoxGeom>(geometry);
      if (!(b.extents.x > 0.0 && b.extents.y > 0.0 && b.extents.z > 0.0))
        throw ConfigError("body '" + name + "': box extents must be > 0");
    } else {
      const auto &pc = std::get<PointCloudGeom>(geometry);
      if (pc.points.empty())
        throw ConfigError("body '" + name + "': point cloud is empty");
      for (std::size_t i = 0; i < pc.points.size(); ++i)
        for (std::size_t j = i + 1; j < pc.points.size(); ++j)
          if (norm(pc.points[i] - pc.points[j]) < kMinSeparation)
            throw ConfigError("body '" + name +
                              "': point cloud has coincident points");
    }
    for (const auto &c : composition) {
      c.species.validate();
      if (!(c.density >= 0.0))
        throw ConfigError("body '" + name + "': densities must be >= 0");
    }
  }

  bool is_volume() const {
    return !std::holds_alternative<PointCloudGeom>(geometry);
  }
};

// Euclidean distance from a point to the body (0 inside).
inline double body_distance(const BodySpec &body, const Vec3 &p) {
  if (const auto *s = std::get_if<SphereGeom>(&body.geometry))
    return std::max(0.0, norm(p - s->center) - s->radius);
  if (const auto *b = std::get_if<BoxGeom>(&body.geometry)) {
    const double dx =
        std::max({b->corner.x - p.x, 0.0, p.x - (b->corner.x + b->extents.x)});
    const double dy =
        std::max({b->corner.y - p.y, 0.0, p.y - (b->corner.y + b->extents.y)});
    const double dz =
        std::max({b->corner.z - p.z, 0.0, p.z - (b->corner.z + b->extents.z)});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  const auto &pc = std::get<PointCloudGeom>(body.geometry);
  double d = std::numeric_limits<double>::infinity();
  for (const auto &q : pc.points)
    d = std::min(d, norm(p - q));
  return d;
}

} // namespace cpvdw

#endif
