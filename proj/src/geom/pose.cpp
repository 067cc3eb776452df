#include "hopkit/geom/pose.hpp"

namespace hopkit {

Pose Pose::inverse() const {
  const UnitQuaternion inv = orientation.inverse();
  return {-inv.rotate(position), inv};
}

Pose Pose::operator*(const Pose& rhs) const {
  return {orientation.rotate(rhs.position) + position,
          orientation * rhs.orientation};
}

PointList transform_points(const Pose& pose, const PointList& points) {
  PointList out;
  out.reserve(points.size());
  for (const Vec3& p : points) out.push_back(pose.apply(p));
  return out;
}

double position_distance(const Pose& a, const Pose& b) {
  return (a.position - b.position).norm();
}

double rotation_distance(const Pose& a, const Pose& b) {
  return a.orientation.angle_to(b.orientation);
}

Pose lerp_pose(const Pose& p0, const Pose& p1, double u) {
  if (u <= 0.0) return p0;
  if (u >= 1.0) return p1;
  return {p0.position + u * (p1.position - p0.position),
          slerp(p0.orientation, p1.orientation, u)};
}

}  // namespace hopkit
