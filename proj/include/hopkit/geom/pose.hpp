#pragma once

#include "hopkit/geom/quaternion.hpp"

namespace hopkit {

// Rigid transform: x_world = orientation * x_local + position.
struct Pose {
  Vec3 position = Vec3::Zero();
  UnitQuaternion orientation;

  static Pose identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return orientation.rotate(p) + position; }
  Pose inverse() const;
  // (*this) applied after `rhs`.
  Pose operator*(const Pose& rhs) const;

  bool operator==(const Pose& o) const {
    return position == o.position && orientation == o.orientation;
  }
};

PointList transform_points(const Pose& pose, const PointList& points);

// Translation distance and rotation angle between two poses.
double position_distance(const Pose& a, const Pose& b);
double rotation_distance(const Pose& a, const Pose& b);

// Position linear, orientation by slerp. Endpoints are returned exactly.
Pose lerp_pose(const Pose& p0, const Pose& p1, double u);

}  // namespace hopkit
