#include "hopkit/scene/predicates.hpp"

#include <algorithm>
#include <limits>

#include "hopkit/simd/kernels.hpp"

namespace hopkit {

double ground_penetration(std::span<const Vec3> points) {
  if (points.empty()) return 0.0;
  return std::max(0.0, -simd::min_z(points));
}

double hand_object_clearance(std::span<const Vec3> hand_points, const ObjectModel& obj,
                             const Pose& obj_pose) {
  if (hand_points.empty()) return std::numeric_limits<double>::infinity();
  const Pose to_object = obj_pose.inverse();
  PointList local;
  local.reserve(hand_points.size());
  for (const Vec3& p : hand_points) local.push_back(to_object.apply(p));

  const ConvexHull& hull = obj.hull();
  const std::vector<double> bound = simd::plane_max(local, hull.planes());
  const double lowest = *std::min_element(bound.begin(), bound.end());
  if (lowest <= 0.0) return lowest;

  // All points outside: the plane bound is a lower bound on the true
  // distance, so points can be skipped once it exceeds the best so far.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (bound[i] >= best) continue;
    best = std::min(best, hull.signed_distance(local[i]));
  }
  return best;
}

}  // namespace hopkit
