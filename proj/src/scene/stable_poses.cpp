#include <algorithm>
#include <cmath>
#include <limits>

#include "hopkit/scene/predicates.hpp"

namespace hopkit {

double support_margin(const ObjectModel& obj, std::size_t f) {
  const ConvexHull& hull = obj.hull();
  const HullFace& face = hull.faces()[f];
  const Vec3 c = obj.com() - (face.normal.dot(obj.com()) - face.offset) * face.normal;
  double margin = std::numeric_limits<double>::infinity();
  const std::size_t m = face.vertices.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec3& a = hull.vertices()[face.vertices[k]];
    const Vec3& b = hull.vertices()[face.vertices[(k + 1) % m]];
    const Vec3 inward = face.normal.cross(b - a).normalized();
    margin = std::min(margin, inward.dot(c - a));
  }
  return margin;
}

std::vector<StablePose> enumerate_stable_poses(const ObjectModel& obj) {
  constexpr double kMargin = 1e-6;
  const double merge_angle = M_PI / 180.0;
  const ConvexHull& hull = obj.hull();
  std::vector<StablePose> out;
  for (std::size_t f = 0; f < hull.faces().size(); ++f) {
    if (support_margin(obj, f) < kMargin) continue;
    const UnitQuaternion q = UnitQuaternion::between(hull.faces()[f].normal, -Vec3::UnitZ());
    double min_z = std::numeric_limits<double>::infinity();
    for (const Vec3& v : hull.vertices()) min_z = std::min(min_z, q.rotate(v).z());
    const StablePose pose{{Vec3(0.0, 0.0, -min_z), q}, static_cast<int>(f)};
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const StablePose& s) {
      return same_rotation(s.pose.orientation, q, merge_angle);
    });
    if (!duplicate) out.push_back(pose);
  }
  return out;
}

}  // namespace hopkit
