#include "hopkit/synth/frame.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hopkit {

namespace {
constexpr std::array<std::string_view, 9> kPhaseNames = {
    "free_move", "grasp", "place", "move", "rotate", "catch", "throw", "regrasp", "transition"};
}

std::string_view phase_name(Phase p) { return kPhaseNames.at(static_cast<std::size_t>(p)); }

Phase phase_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPhaseNames.size(); ++i) {
    if (kPhaseNames[i] == name) return static_cast<Phase>(i);
  }
  throw std::invalid_argument("unknown phase '" + std::string(name) + "'");
}

Frame make_frame(const KinematicTree& hand, const ObjectModel* obj, const Pose& wrist,
                 std::vector<double> theta, const std::optional<Pose>& object_pose, bool contact,
                 Phase phase) {
  Frame f;
  f.wrist = wrist;
  f.joints = forward_kinematics(hand, wrist, theta);
  f.theta = std::move(theta);
  f.object = object_pose;
  if (object_pose) {
    if (obj == nullptr) throw std::invalid_argument("make_frame: object pose without object model");
    f.object_keypoints = obj->world_keypoints(*object_pose);
  }
  f.contact.assign(hand.fingertips().size(), contact);
  f.phase = phase;
  return f;
}

std::vector<std::string> check_frame(const Frame& f, const KinematicTree& hand,
                                     const ObjectModel* obj) {
  std::vector<std::string> out;
  auto unit = [](const UnitQuaternion& q) { return std::abs(q.norm() - 1.0) <= 1e-9; };
  if (!f.wrist.position.allFinite()) out.push_back("wrist position is not finite");
  if (!unit(f.wrist.orientation)) out.push_back("wrist quaternion is not unit");
  if (f.theta.size() != hand.dof()) {
    out.push_back("theta has " + std::to_string(f.theta.size()) + " entries, expected " +
                  std::to_string(hand.dof()));
  } else {
    if (!hand.within_limits(f.theta, 1e-9)) out.push_back("finger angles outside joint limits");
    if (f.joints.size() != hand.joint_count()) {
      out.push_back("joints has " + std::to_string(f.joints.size()) + " points, expected " +
                    std::to_string(hand.joint_count()));
    } else if (f.wrist.position.allFinite()) {
      const PointList fk = forward_kinematics(hand, f.wrist, f.theta);
      double worst = 0.0;
      for (std::size_t i = 0; i < fk.size(); ++i) {
        worst = std::max(worst, (fk[i] - f.joints[i]).norm());
      }
      if (!(worst <= kFrameTolerance)) {
        out.push_back("joints deviate from forward kinematics by " + std::to_string(worst) + " m");
      }
    }
  }
  if (f.contact.size() != hand.fingertips().size()) {
    out.push_back("contact has " + std::to_string(f.contact.size()) + " flags, expected " +
                  std::to_string(hand.fingertips().size()));
  }
  if (f.object) {
    if (!f.object->position.allFinite()) out.push_back("object position is not finite");
    if (!unit(f.object->orientation)) out.push_back("object quaternion is not unit");
    if (obj != nullptr) {
      if (f.object_keypoints.size() != obj->keypoints().size()) {
        out.push_back("obj_kp has " + std::to_string(f.object_keypoints.size()) +
                      " points, expected " + std::to_string(obj->keypoints().size()));
      } else {
        const PointList expect = obj->world_keypoints(*f.object);
        double worst = 0.0;
        for (std::size_t i = 0; i < expect.size(); ++i) {
          worst = std::max(worst, (expect[i] - f.object_keypoints[i]).norm());
        }
        if (!(worst <= kFrameTolerance)) {
          out.push_back("object keypoints deviate from object pose by " + std::to_string(worst) +
                        " m");
        }
      }
    }
  } else if (!f.object_keypoints.empty()) {
    out.push_back("object keypoints present without an object pose");
  }
  return out;
}

std::vector<Issue> check_trajectory(const Trajectory& t, const KinematicTree& hand,
                                    const ObjectModel* obj, const TrajectoryLimits& limits) {
  std::vector<Issue> issues;
  if (t.frames.size() < 2) issues.push_back({-1, "trajectory needs at least 2 frames"});
  if (!(t.fps > 0.0) || !std::isfinite(t.fps)) issues.push_back({-1, "fps must be positive"});
  if (t.meta.hand_model != hand.id()) {
    issues.push_back({-1, "hand model '" + t.meta.hand_model + "' does not match '" + hand.id() + "'"});
  }
  if (obj != nullptr && t.meta.object != obj->id()) {
    issues.push_back({-1, "object '" + t.meta.object + "' does not match '" + obj->id() + "'"});
  }
  const double max_step = limits.max_wrist_speed / t.fps;
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const Frame& f = t.frames[i];
    for (auto& msg : check_frame(f, hand, f.object ? obj : nullptr)) {
      issues.push_back({static_cast<long>(i), std::move(msg)});
    }
    if (i > 0 && t.fps > 0.0) {
      const double step = (f.wrist.position - t.frames[i - 1].wrist.position).norm();
      if (!(step <= max_step)) {
        issues.push_back({static_cast<long>(i), "wrist moved " + std::to_string(step) +
                                                    " m in one frame (limit " +
                                                    std::to_string(max_step) + ")"});
      }
    }
  }
  return issues;
}

Trajectory reversed(const Trajectory& t, Phase phase) {
  Trajectory out = t;
  std::reverse(out.frames.begin(), out.frames.end());
  for (Frame& f : out.frames) f.phase = phase;
  return out;
}

}  // namespace hopkit
