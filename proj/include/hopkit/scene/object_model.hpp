#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hopkit/geom/pose.hpp"
#include "hopkit/scene/convex_hull.hpp"

namespace hopkit {

// Region of the object surface that a Rotate grasp must touch. Either an
// explicit point set, or the lateral surface of a cylinder of `radius`
// around the rotation axis through `center`, |axial offset| <= half_length.
struct RotatableRegion {
  enum class Kind { points, cylinder };
  Kind kind = Kind::points;
  PointList points;
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  double half_length = 0.0;
};

class ObjectModel {
 public:
  ObjectModel() = default;
  ObjectModel(std::string id, PointList keypoints, PointList hull_points, Vec3 com,
              std::optional<RotatableRegion> region = std::nullopt,
              std::optional<Vec3> axis = std::nullopt);

  const std::string& id() const { return id_; }
  const PointList& keypoints() const { return keypoints_; }
  const PointList& hull_points() const { return hull_points_; }
  const ConvexHull& hull() const { return hull_; }
  const Vec3& com() const { return com_; }
  const std::optional<RotatableRegion>& rotatable_region() const { return region_; }
  const std::optional<Vec3>& rotation_axis() const { return axis_; }
  double scale() const { return scale_; }

  // Object-frame distance from p to the rotatable region. Throws
  // std::logic_error when the object has no region.
  double distance_to_region(const Vec3& p_object) const;

  PointList world_keypoints(const Pose& pose) const {
    return transform_points(pose, keypoints_);
  }

  friend ObjectModel apply_scale(const ObjectModel& obj, double s);

 private:
  std::string id_;
  PointList keypoints_;
  PointList hull_points_;
  ConvexHull hull_;
  Vec3 com_ = Vec3::Zero();
  std::optional<RotatableRegion> region_;
  std::optional<Vec3> axis_;
  double scale_ = 1.0;
};

// Uniform scaling about the object origin; the scale field accumulates.
ObjectModel apply_scale(const ObjectModel& obj, double s);

ObjectModel parse_object_model(const std::string& json_text);
ObjectModel load_object_model(const std::filesystem::path& path);
std::string object_model_to_json(const ObjectModel& obj);

// Axis-aligned operational volume above the ground plane z = 0.
struct Workspace {
  Vec3 lo{-0.5, -0.5, 0.0};
  Vec3 hi{0.5, 0.5, 0.8};

  bool contains(const Vec3& p, double tol = 0.0) const {
    return (p.array() >= lo.array() - tol).all() && (p.array() <= hi.array() + tol).all();
  }
  void validate() const;
};

}  // namespace hopkit
