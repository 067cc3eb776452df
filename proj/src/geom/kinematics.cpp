#include "hopkit/geom/kinematics.hpp"
#include "hopkit/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hopkit {

KinematicTree::KinematicTree(std::string id, std::vector<Joint> joints,
                             std::vector<int> fingertips,
                             std::map<std::string, int> keypoints)
    : id_(std::move(id)),
      joints_(std::move(joints)),
      fingertips_(std::move(fingertips)),
      keypoints_(std::move(keypoints)) {
  for (const Joint& j : joints_) dof_ += j.axes.size();
  validate();
}

void KinematicTree::validate() const {
  if (joints_.empty()) throw std::invalid_argument("kinematic tree has no joints");
  if (joints_[0].parent != -1) {
    throw std::invalid_argument("joint 0 must be the wrist root");
  }
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const Joint& j = joints_[i];
    if (i > 0 && (j.parent < 0 || static_cast<std::size_t>(j.parent) >= i)) {
      throw std::invalid_argument("joint '" + j.name +
                                  "' parent index must precede it");
    }
    if (j.axes.size() > 3 || j.axes.size() != j.limits.size()) {
      throw std::invalid_argument("joint '" + j.name +
                                  "' needs <= 3 axes and one limit per axis");
    }
    for (const Vec3& a : j.axes) {
      if (std::abs(a.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("joint '" + j.name + "' axis is not unit length");
      }
    }
    for (const JointLimit& l : j.limits) {
      if (!(l.lower <= l.upper)) {
        throw std::invalid_argument("joint '" + j.name + "' has inverted limits");
      }
    }
  }
  const auto n = static_cast<int>(joints_.size());
  for (int t : fingertips_) {
    if (t < 0 || t >= n) throw std::invalid_argument("fingertip index out of range");
  }
  for (const auto& [name, idx] : keypoints_) {
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("keypoint '" + name + "' out of range");
    }
  }
}

int KinematicTree::keypoint(const std::string& name) const {
  const auto it = keypoints_.find(name);
  if (it == keypoints_.end()) {
    throw std::out_of_range("hand model '" + id_ + "' has no keypoint '" + name + "'");
  }
  return it->second;
}

std::vector<JointLimit> KinematicTree::dof_limits() const {
  std::vector<JointLimit> out;
  out.reserve(dof_);
  for (const Joint& j : joints_) out.insert(out.end(), j.limits.begin(), j.limits.end());
  return out;
}

bool KinematicTree::within_limits(std::span<const double> angles, double tol) const {
  if (angles.size() != dof_) return false;
  std::size_t k = 0;
  for (const Joint& j : joints_) {
    for (const JointLimit& l : j.limits) {
      const double a = angles[k++];
      if (!std::isfinite(a) || a < l.lower - tol || a > l.upper + tol) return false;
    }
  }
  return true;
}

std::vector<double> KinematicTree::clamp_to_limits(std::span<const double> angles) const {
  if (angles.size() != dof_) {
    throw std::invalid_argument("angle count does not match hand DoF");
  }
  std::vector<double> out(angles.begin(), angles.end());
  std::size_t k = 0;
  for (const Joint& j : joints_) {
    for (const JointLimit& l : j.limits) {
      out[k] = std::min(std::max(out[k], l.lower), l.upper);
      ++k;
    }
  }
  return out;
}

PointList forward_kinematics(const KinematicTree& tree, const Pose& wrist,
                             std::span<const double> angles) {
  if (angles.size() != tree.dof()) {
    throw std::invalid_argument("forward_kinematics: expected " +
                                std::to_string(tree.dof()) + " angles, got " +
                                std::to_string(angles.size()));
  }
  const auto& joints = tree.joints();
  std::vector<Pose> frames(joints.size());
  PointList positions(joints.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const Joint& j = joints[i];
    const Pose& parent = j.parent < 0 ? wrist : frames[static_cast<std::size_t>(j.parent)];
    UnitQuaternion local;
    for (const Vec3& axis : j.axes) {
      local = local * UnitQuaternion::from_axis_angle(axis, angles[k++]);
    }
    frames[i] = parent * Pose{j.offset, local};
    positions[i] = frames[i].position;
  }
  return positions;
}

namespace {

Vec3 vec3_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

namespace {

KinematicTree parse_hand_model_impl(const std::string& json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  std::vector<Joint> joints;
  std::map<std::string, int> by_name;
  for (const auto& jj : doc.at("joints")) {
    Joint j;
    if (!jj.is_object()) throw std::invalid_argument("joint entries must be objects");
    j.name = jj.at("name").get<std::string>();
    j.parent = jj.at("parent").get<int>();
    j.offset = vec3_from(jj.at("offset"));
    const nlohmann::json axes = jj.value("axes", nlohmann::json::array());
    const nlohmann::json limits = jj.value("limits", nlohmann::json::array());
    for (const auto& a : axes) j.axes.push_back(vec3_from(a));
    for (const auto& l : limits) {
      j.limits.push_back({l.at(0).get<double>(), l.at(1).get<double>()});
    }
    by_name[j.name] = static_cast<int>(joints.size());
    joints.push_back(std::move(j));
  }
  auto resolve = [&](const std::string& name) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) throw std::invalid_argument("unknown joint '" + name + "'");
    return it->second;
  };
  std::vector<int> tips;
  for (const auto& t : doc.at("fingertips")) tips.push_back(resolve(t.get<std::string>()));
  std::map<std::string, int> keypoints;
  const nlohmann::json named = doc.value("keypoints", nlohmann::json::object());
  for (const auto& [name, joint] : named.items()) {
    keypoints[name] = resolve(joint.get<std::string>());
  }
  return KinematicTree(doc.at("id").get<std::string>(), std::move(joints),
                       std::move(tips), std::move(keypoints));
}

}  // namespace

KinematicTree parse_hand_model(const std::string& json_text) {
  try {
    return parse_hand_model_impl(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("", std::string("malformed hand model: ") + e.what());
  }
}

KinematicTree load_hand_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open hand model " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hand_model(ss.str());
}

}  // namespace hopkit
