#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hopkit/grasp/grasp.hpp"
#include "hopkit/synth/frame.hpp"

namespace hopkit {

enum class PlanAction { start, approach, grasp, transport, release, retreat, end };

std::string_view action_name(PlanAction a);
// Throws std::invalid_argument for labels outside the seven-label set.
PlanAction action_from_name(std::string_view name);

struct PlanKeypoint {
  long index = 0;
  Pose pose;
  PlanAction action = PlanAction::transport;
};

struct ManipulationPlan {
  std::string object;
  long selected_grasp = 0;  // entry of the grasp set
  long grasp_index = 0;     // keypoint index carrying the grasp label
  long release_index = 0;   // keypoint index carrying the release label
  std::vector<PlanKeypoint> keypoints;

  // Positions in `keypoints` of the grasp and release events.
  std::size_t grasp_position() const;
  std::size_t release_position() const;
};

// Quaternions within 1e-3 of unit norm are normalized, others rejected.
// Every failure is a ParseError naming the field (and keypoint position).
ManipulationPlan parse_plan(std::string_view document);
std::string plan_to_json(const ManipulationPlan& plan);

struct DensePath {
  std::vector<Pose> poses;
  // Sample index of each keypoint; keypoint k lands on k * samples.
  std::vector<std::size_t> keypoint_samples;
  std::size_t grasp_sample = 0;
  std::size_t release_sample = 0;
};

inline constexpr double kDefaultTangentScale = 1.0 / 6.0;

// Interpolates start->grasp, grasp->release and release->end separately:
// positions by cubic Bezier, orientations by slerp after forcing sign
// continuity. A segment whose keypoints stay within 1 degree of its first
// orientation gets one slerp over the whole segment instead.
DensePath densify_plan(const ManipulationPlan& plan, int samples_per_keypoint = 20,
                       double tangent_scale = kDefaultTangentScale);

struct PlanTolerance {
  double position = 0.01;            // m
  double angle = 10.0 * M_PI / 180;  // rad
};

// Fuses the selected grasp with the dense wrist path. Before the grasp the
// object rests at the grasp's object pose and the fingers are open; during
// transport the object follows the wrist rigidly; after release the object
// stays at its release pose and the fingers open linearly.
Trajectory plan_to_demonstration(const ManipulationPlan& plan, const DensePath& path,
                                 const GraspSet& grasps, const KinematicTree& hand,
                                 const ObjectModel& obj, double fps = 60.0,
                                 const PlanTolerance& tol = {});

}  // namespace hopkit
