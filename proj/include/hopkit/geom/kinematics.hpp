#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hopkit/geom/pose.hpp"

namespace hopkit {

struct JointLimit {
  double lower = 0.0;
  double upper = 0.0;
};

struct Joint {
  std::string name;
  int parent = -1;
  Vec3 offset = Vec3::Zero();     // in the parent joint frame
  std::vector<Vec3> axes;         // 0..3 unit axes, applied in order
  std::vector<JointLimit> limits; // one per axis, radians
};

// Hand morphology as data: wrist root plus finger chains. Joint i's parent
// is always < i, so a single forward pass evaluates the tree.
class KinematicTree {
 public:
  KinematicTree() = default;
  KinematicTree(std::string id, std::vector<Joint> joints,
                std::vector<int> fingertips, std::map<std::string, int> keypoints);

  const std::string& id() const { return id_; }
  const std::vector<Joint>& joints() const { return joints_; }
  std::size_t joint_count() const { return joints_.size(); }
  std::size_t dof() const { return dof_; }
  const std::vector<int>& fingertips() const { return fingertips_; }
  const std::map<std::string, int>& keypoints() const { return keypoints_; }

  // Joint index of a named keypoint (e.g. "index_first_joint").
  int keypoint(const std::string& name) const;

  // Limits flattened in DoF order.
  std::vector<JointLimit> dof_limits() const;
  bool within_limits(std::span<const double> angles, double tol = 1e-9) const;
  std::vector<double> clamp_to_limits(std::span<const double> angles) const;

 private:
  void validate() const;

  std::string id_;
  std::vector<Joint> joints_;
  std::vector<int> fingertips_;
  std::map<std::string, int> keypoints_;
  std::size_t dof_ = 0;
};

// World positions of every joint (index 0 is the wrist) for the given
// wrist pose and joint angles. Throws std::invalid_argument when the angle
// count does not match tree.dof().
PointList forward_kinematics(const KinematicTree& tree, const Pose& wrist,
                             std::span<const double> angles);

KinematicTree load_hand_model(const std::filesystem::path& path);
KinematicTree parse_hand_model(const std::string& json_text);

}  // namespace hopkit
