#pragma once

#include <span>
#include <vector>

#include "hopkit/scene/object_model.hpp"

namespace hopkit {

// Depth below z = 0 of the lowest point: max(0, -min z). Empty input is 0.
double ground_penetration(std::span<const Vec3> points);

// Minimum over hand points of the signed Euclidean distance to the object
// hull placed at `obj_pose` (negative = inside). Empty input is +inf.
double hand_object_clearance(std::span<const Vec3> hand_points, const ObjectModel& obj,
                             const Pose& obj_pose);

// Resting pose on z = 0, one per statically stable hull face.
struct StablePose {
  Pose pose;
  int face = -1;
};

// Faces whose outward normal can point down with the center of mass
// projecting strictly inside the face (margin 1e-6). The object is rotated
// so the face lies on z = 0 with its origin above (0, 0). Orientations
// within 1 degree of an earlier pose are merged.
std::vector<StablePose> enumerate_stable_poses(const ObjectModel& obj);

// Distance from the COM projection to the nearest edge of face f, positive
// when inside the face polygon.
double support_margin(const ObjectModel& obj, std::size_t face);

}  // namespace hopkit
