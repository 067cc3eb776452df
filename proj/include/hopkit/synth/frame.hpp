#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopkit/error.hpp"
#include "hopkit/geom/kinematics.hpp"
#include "hopkit/scene/object_model.hpp"

namespace hopkit {

enum class Phase : std::uint8_t {
  free_move = 0,
  grasp,
  place,
  move,
  rotate,
  catch_,
  throw_,
  regrasp,
  transition,
};

std::string_view phase_name(Phase p);
// Throws std::invalid_argument for unknown names.
Phase phase_from_name(std::string_view name);

// One reference state g_t. Free Move frames carry no object channel.
struct Frame {
  Pose wrist;
  std::vector<double> theta;
  PointList joints;
  std::optional<Pose> object;
  PointList object_keypoints;
  std::vector<bool> contact;  // one flag per fingertip
  Phase phase = Phase::transition;
};

struct Provenance {
  std::vector<std::string> skills;
  std::uint64_t seed = 0;
  std::string object;
  std::string hand_model;
  double scale = 1.0;
};

struct Trajectory {
  std::vector<Frame> frames;
  double fps = 60.0;
  Provenance meta;

  std::size_t size() const { return frames.size(); }
};

// Builds a frame whose joints come from forward kinematics and whose
// object keypoints come from `obj` at `object_pose`.
Frame make_frame(const KinematicTree& hand, const ObjectModel* obj, const Pose& wrist,
                 std::vector<double> theta, const std::optional<Pose>& object_pose, bool contact,
                 Phase phase);

inline constexpr double kFrameTolerance = 1e-6;

// Invariant problems of one frame; `obj` may be null when the frame has no
// object channel.
std::vector<std::string> check_frame(const Frame& f, const KinematicTree& hand,
                                     const ObjectModel* obj);

struct TrajectoryLimits {
  double max_wrist_speed = 20.0;  // m/s; replicated keyframes jump
};

// Every frame and trajectory-level invariant; issues carry frame indices.
std::vector<Issue> check_trajectory(const Trajectory& t, const KinematicTree& hand,
                                    const ObjectModel* obj, const TrajectoryLimits& limits = {});

// Frames in reverse order, relabeled with `phase`.
Trajectory reversed(const Trajectory& t, Phase phase);

}  // namespace hopkit
