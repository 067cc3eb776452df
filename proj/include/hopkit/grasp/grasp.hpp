#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopkit/error.hpp"
#include "hopkit/geom/kinematics.hpp"
#include "hopkit/scene/object_model.hpp"

namespace hopkit {

// One static hand + object state: wrist pose, finger angles, finger joint
// positions, object pose and world-frame object keypoints.
struct GraspConfiguration {
  Pose wrist;
  std::vector<double> theta;
  PointList joints;
  Pose object;
  PointList object_keypoints;
  std::string hand_model;
  std::string object_id;
};

struct GraspSet {
  std::string hand_model;
  std::string object_id;
  std::vector<GraspConfiguration> grasps;

  std::size_t size() const { return grasps.size(); }
  const GraspConfiguration& operator[](std::size_t i) const { return grasps[i]; }
};

// Tolerance on joint positions against forward kinematics. Grasps come from
// external generators, so this is loose.
inline constexpr double kGraspFkTolerance = 5e-3;
inline constexpr double kGraspKeypointTolerance = 1e-6;

// Problems with one grasp against its hand and object models; empty if valid.
std::vector<std::string> check_grasp(const GraspConfiguration& g, const KinematicTree& hand,
                                     const ObjectModel& obj);

enum class LoadMode { strict, lenient };

struct GraspLoadResult {
  GraspSet set;
  std::vector<Issue> dropped;  // lenient mode: entries removed, by index
};

// Parses and validates a grasp set document. Schema problems throw
// ParseError; invariant violations throw ValidationError listing every bad
// entry in strict mode, and drop those entries in lenient mode. An empty
// result is always an error ("empty set").
GraspLoadResult parse_grasp_set(const std::string& json_text, const KinematicTree& hand,
                                const ObjectModel& obj, LoadMode mode = LoadMode::strict);
GraspLoadResult load_grasp_set(const std::filesystem::path& path, const KinematicTree& hand,
                               const ObjectModel& obj, LoadMode mode = LoadMode::strict);
std::string grasp_set_to_json(const GraspSet& set);

// Rigidly moves the whole configuration so its object lands on `target`.
GraspConfiguration retarget_grasp(const GraspConfiguration& g, const Pose& target);

// Applies the rigid transform T (world frame) to every pose and point.
GraspConfiguration transform_grasp(const GraspConfiguration& g, const Pose& T);

// Wrist pose expressed in the object frame.
Pose wrist_in_object(const GraspConfiguration& g);

struct GraspMetricWeights {
  double position = 1.0;  // per meter
  double rotation = 1.0;  // per radian
  double fingers = 1.0;   // per radian
};

// w_p |dT| + w_r geodesic(dR) + w_theta mean|d theta| on the object-frame
// wrist poses.
double grasp_distance(const GraspConfiguration& a, const GraspConfiguration& b,
                      const GraspMetricWeights& w = {});

// Closest pool entry to g; lowest index wins ties. `available`, when
// non-empty, masks out used entries. Throws std::invalid_argument if no
// candidate is available.
std::pair<std::size_t, double> nearest_grasp(const GraspConfiguration& g, const GraspSet& pool,
                                             const GraspMetricWeights& w = {},
                                             std::span<const bool> available = {});

struct ContactCriteria {
  double epsilon = 0.008;  // meters
  int min_fingertips = 2;
};

// True when at least `min_fingertips` fingertips lie within `epsilon` of
// the object's rotatable region. Throws std::logic_error when the object
// has no region.
bool contacts_rotatable_region(const GraspConfiguration& g, const KinematicTree& hand,
                               const ObjectModel& obj, const ContactCriteria& c = {});

}  // namespace hopkit
