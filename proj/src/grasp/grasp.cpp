#include "hopkit/grasp/grasp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hopkit/io/json_util.hpp"

namespace hopkit {

std::vector<std::string> check_grasp(const GraspConfiguration& g, const KinematicTree& hand,
                                     const ObjectModel& obj) {
  std::vector<std::string> problems;
  if (g.hand_model != hand.id()) {
    problems.push_back("hand model '" + g.hand_model + "' does not match '" + hand.id() + "'");
  }
  if (g.object_id != obj.id()) {
    problems.push_back("object '" + g.object_id + "' does not match '" + obj.id() + "'");
  }
  if (g.theta.size() != hand.dof()) {
    problems.push_back("theta has " + std::to_string(g.theta.size()) + " entries, hand has " +
                       std::to_string(hand.dof()) + " DoF");
    return problems;
  }
  if (!hand.within_limits(g.theta)) problems.push_back("finger angles outside joint limits");
  if (g.joints.size() != hand.joint_count()) {
    problems.push_back("joints has " + std::to_string(g.joints.size()) + " points, hand has " +
                       std::to_string(hand.joint_count()));
  } else {
    const PointList fk = forward_kinematics(hand, g.wrist, g.theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < fk.size(); ++i) worst = std::max(worst, (fk[i] - g.joints[i]).norm());
    if (!(worst <= kGraspFkTolerance)) {
      problems.push_back("joint positions deviate from forward kinematics by " +
                         std::to_string(worst) + " m");
    }
  }
  if (g.object_keypoints.size() != obj.keypoints().size()) {
    problems.push_back("obj_kp has " + std::to_string(g.object_keypoints.size()) +
                       " points, object has " + std::to_string(obj.keypoints().size()));
  } else {
    const PointList expected = obj.world_keypoints(g.object);
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      worst = std::max(worst, (expected[i] - g.object_keypoints[i]).norm());
    }
    if (!(worst <= kGraspKeypointTolerance)) {
      problems.push_back("object keypoints inconsistent with object pose by " +
                         std::to_string(worst) + " m");
    }
  }
  return problems;
}

GraspLoadResult parse_grasp_set(const std::string& json_text, const KinematicTree& hand,
                                const ObjectModel& obj, LoadMode mode) {
  io::Json doc;
  try {
    doc = io::Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  GraspLoadResult result;
  result.set.hand_model = io::require(doc, "hand_model", "").get<std::string>();
  result.set.object_id = io::require(doc, "object", "").get<std::string>();
  const io::Json& arr = io::require(doc, "grasps", "");
  if (!arr.is_array()) throw ParseError("grasps", "expected an array");
  if (arr.empty()) throw ValidationError("empty set", {});

  std::vector<Issue> issues;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "grasps[" + std::to_string(i) + "]";
    const io::Json& e = arr[i];
    GraspConfiguration g;
    g.wrist = io::read_pose(io::require(e, "wrist", path), path + ".wrist");
    g.theta = io::read_numbers(io::require(e, "theta", path), path + ".theta");
    g.joints = io::read_points(io::require(e, "joints", path), path + ".joints");
    g.object = io::read_pose(io::require(e, "obj", path), path + ".obj");
    g.object_keypoints = io::read_points(io::require(e, "obj_kp", path), path + ".obj_kp");
    g.hand_model = result.set.hand_model;
    g.object_id = result.set.object_id;
    const auto problems = check_grasp(g, hand, obj);
    if (problems.empty()) {
      result.set.grasps.push_back(std::move(g));
      continue;
    }
    for (const auto& p : problems) issues.push_back({static_cast<long>(i), p});
  }
  if (!issues.empty()) {
    if (mode == LoadMode::strict) {
      throw ValidationError("grasp set has " + std::to_string(issues.size()) + " invariant violations",
                            issues);
    }
    result.dropped = issues;
  }
  if (result.set.grasps.empty()) throw ValidationError("empty set", issues);
  return result;
}

GraspLoadResult load_grasp_set(const std::filesystem::path& path, const KinematicTree& hand,
                               const ObjectModel& obj, LoadMode mode) {
  return parse_grasp_set(io::read_file(path), hand, obj, mode);
}

std::string grasp_set_to_json(const GraspSet& set) {
  io::Json doc;
  doc["hand_model"] = set.hand_model;
  doc["object"] = set.object_id;
  io::Json arr = io::Json::array();
  for (const GraspConfiguration& g : set.grasps) {
    io::Json e;
    e["wrist"] = io::write_pose(g.wrist);
    e["theta"] = g.theta;
    e["joints"] = io::write_points(g.joints);
    e["obj"] = io::write_pose(g.object);
    e["obj_kp"] = io::write_points(g.object_keypoints);
    arr.push_back(std::move(e));
  }
  doc["grasps"] = std::move(arr);
  return doc.dump(1);
}

GraspConfiguration transform_grasp(const GraspConfiguration& g, const Pose& T) {
  GraspConfiguration out = g;
  out.wrist = T * g.wrist;
  out.joints = transform_points(T, g.joints);
  out.object = T * g.object;
  out.object_keypoints = transform_points(T, g.object_keypoints);
  return out;
}

GraspConfiguration retarget_grasp(const GraspConfiguration& g, const Pose& target) {
  if (g.object == target) return g;
  GraspConfiguration out = transform_grasp(g, target * g.object.inverse());
  out.object = target;
  return out;
}

Pose wrist_in_object(const GraspConfiguration& g) { return g.object.inverse() * g.wrist; }

double grasp_distance(const GraspConfiguration& a, const GraspConfiguration& b,
                      const GraspMetricWeights& w) {
  const Pose ra = wrist_in_object(a);
  const Pose rb = wrist_in_object(b);
  double fingers = 0.0;
  const std::size_t n = std::min(a.theta.size(), b.theta.size());
  if (a.theta.size() != b.theta.size()) {
    throw std::invalid_argument("grasp_distance: finger DoF mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) fingers += std::abs(a.theta[i] - b.theta[i]);
  if (n > 0) fingers /= static_cast<double>(n);
  return w.position * (ra.position - rb.position).norm() +
         w.rotation * ra.orientation.angle_to(rb.orientation) + w.fingers * fingers;
}

std::pair<std::size_t, double> nearest_grasp(const GraspConfiguration& g, const GraspSet& pool,
                                             const GraspMetricWeights& w,
                                             std::span<const bool> available) {
  if (!available.empty() && available.size() != pool.size()) {
    throw std::invalid_argument("nearest_grasp: availability mask size mismatch");
  }
  std::size_t best_i = pool.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!available.empty() && !available[i]) continue;
    const double d = grasp_distance(g, pool[i], w);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  if (best_i == pool.size()) throw std::invalid_argument("nearest_grasp: no candidate available");
  return {best_i, best};
}

bool contacts_rotatable_region(const GraspConfiguration& g, const KinematicTree& hand,
                               const ObjectModel& obj, const ContactCriteria& c) {
  if (!obj.rotatable_region()) {
    throw std::logic_error("object '" + obj.id() + "' has no rotatable region");
  }
  const Pose to_object = g.object.inverse();
  int touching = 0;
  for (int tip : hand.fingertips()) {
    const Vec3 p = to_object.apply(g.joints.at(static_cast<std::size_t>(tip)));
    if (obj.distance_to_region(p) <= c.epsilon) ++touching;
  }
  return touching >= c.min_fingertips;
}

}  // namespace hopkit
