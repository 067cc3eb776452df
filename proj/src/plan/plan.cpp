#include "hopkit/plan/plan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "hopkit/geom/interpolation.hpp"
#include "hopkit/io/json_util.hpp"

namespace hopkit {

namespace {

constexpr std::array<std::string_view, 7> kActionNames{
    "start", "approach", "grasp", "transport", "release", "retreat", "end"};

std::size_t position_of(const ManipulationPlan& plan, long index, const char* what) {
  for (std::size_t i = 0; i < plan.keypoints.size(); ++i) {
    if (plan.keypoints[i].index == index) return i;
  }
  throw ParseError(what, "no keypoint with index " + std::to_string(index));
}

long read_index(const io::Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ParseError(path, "expected an integer");
  }
  return j.get<long>();
}

std::string describe(const Pose& p) {
  std::ostringstream s;
  s << "p=(" << p.position.x() << ", " << p.position.y() << ", " << p.position.z() << ") q=("
    << p.orientation.w() << ", " << p.orientation.x() << ", " << p.orientation.y() << ", "
    << p.orientation.z() << ")";
  return s.str();
}

}  // namespace

std::string_view action_name(PlanAction a) { return kActionNames[static_cast<std::size_t>(a)]; }

PlanAction action_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i) {
    if (kActionNames[i] == name) return static_cast<PlanAction>(i);
  }
  throw std::invalid_argument("unknown action label '" + std::string(name) + "'");
}

std::size_t ManipulationPlan::grasp_position() const {
  return position_of(*this, grasp_index, "grasp_index");
}
std::size_t ManipulationPlan::release_position() const {
  return position_of(*this, release_index, "release_index");
}

ManipulationPlan parse_plan(std::string_view document) {
  io::Json j;
  try {
    j = io::Json::parse(document);
  } catch (const io::Json::exception& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("", "plan must be a JSON object");

  ManipulationPlan plan;
  try {
    const io::Json& object = io::require(j, "object", "");
    if (!object.is_string()) throw ParseError("object", "expected a string");
    plan.object = object.get<std::string>();
    plan.selected_grasp = read_index(io::require(j, "selected_grasp", ""), "selected_grasp");
    if (plan.selected_grasp < 0) throw ParseError("selected_grasp", "must be >= 0");
    plan.grasp_index = read_index(io::require(j, "grasp_index", ""), "grasp_index");
    plan.release_index = read_index(io::require(j, "release_index", ""), "release_index");

    const io::Json& kps = io::require(j, "keypoints", "");
    if (!kps.is_array()) throw ParseError("keypoints", "expected an array");
    if (kps.size() < 2) throw ParseError("keypoints", "need at least two keypoints");
    for (std::size_t i = 0; i < kps.size(); ++i) {
      const std::string path = "keypoints[" + std::to_string(i) + "]";
      const io::Json& k = kps[i];
      if (!k.is_object()) throw ParseError(path, "expected an object", static_cast<long>(i));
      PlanKeypoint kp;
      try {
        kp.index = read_index(io::require(k, "index", path), path + ".index");
        kp.pose.position = io::read_vec3(io::require(k, "p", path), path + ".p");
        kp.pose.orientation = io::read_quaternion(io::require(k, "q", path), path + ".q", 1e-3);
        const io::Json& action = io::require(k, "action", path);
        if (!action.is_string()) throw ParseError(path + ".action", "expected a string");
        try {
          kp.action = action_from_name(action.get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw ParseError(path + ".action", e.what());
        }
      } catch (const ParseError& e) {
        throw ParseError(e.field(), e.message(), static_cast<long>(i));
      }
      if (!plan.keypoints.empty() && kp.index <= plan.keypoints.back().index) {
        throw ParseError(path + ".index", "indices must be strictly increasing",
                         static_cast<long>(i));
      }
      plan.keypoints.push_back(kp);
    }
  } catch (const io::Json::exception& e) {
    throw ParseError("", std::string("malformed plan: ") + e.what());
  }

  if (plan.grasp_index >= plan.release_index) {
    throw ParseError("grasp_index", "must be smaller than release_index");
  }
  for (const auto& [label, index, field] :
       {std::tuple{PlanAction::grasp, plan.grasp_index, "grasp_index"},
        std::tuple{PlanAction::release, plan.release_index, "release_index"}}) {
    long count = 0;
    for (const PlanKeypoint& k : plan.keypoints) count += k.action == label;
    if (count != 1) {
      throw ParseError("keypoints", "expected exactly one '" + std::string(action_name(label)) +
                                        "' keypoint, found " + std::to_string(count));
    }
    const std::size_t pos = position_of(plan, index, field);
    if (plan.keypoints[pos].action != label) {
      throw ParseError(field, "keypoint " + std::to_string(index) + " is not labeled '" +
                                  std::string(action_name(label)) + "'",
                       static_cast<long>(pos));
    }
  }
  return plan;
}

std::string plan_to_json(const ManipulationPlan& plan) {
  io::Json j;
  j["object"] = plan.object;
  j["selected_grasp"] = plan.selected_grasp;
  j["grasp_index"] = plan.grasp_index;
  j["release_index"] = plan.release_index;
  io::Json kps = io::Json::array();
  for (const PlanKeypoint& k : plan.keypoints) {
    io::Json e;
    e["index"] = k.index;
    e["p"] = io::write_vec3(k.pose.position);
    e["q"] = io::write_quaternion(k.pose.orientation);
    e["action"] = std::string(action_name(k.action));
    kps.push_back(std::move(e));
  }
  j["keypoints"] = std::move(kps);
  return j.dump(2) + "\n";
}

DensePath densify_plan(const ManipulationPlan& plan, int spk, double tangent_scale) {
  if (spk < 1) throw std::invalid_argument("samples per keypoint must be >= 1");
  const std::size_t n = plan.keypoints.size();
  const std::size_t g = plan.grasp_position();
  const std::size_t r = plan.release_position();

  std::vector<UnitQuaternion> q;
  q.reserve(n);
  for (const PlanKeypoint& k : plan.keypoints) {
    const UnitQuaternion& o = k.pose.orientation;
    q.push_back(!q.empty() && q.back().dot(o) < 0.0 ? o.negated() : o);
  }

  DensePath out;
  out.poses.push_back({plan.keypoints.front().pose.position, q.front()});
  const std::array<std::pair<std::size_t, std::size_t>, 3> segments{{{0, g}, {g, r}, {r, n - 1}}};
  for (const auto& [a, b] : segments) {
    if (b <= a) continue;
    PointList anchors;
    for (std::size_t i = a; i <= b; ++i) anchors.push_back(plan.keypoints[i].pose.position);
    const PointList pos = cubic_bezier(anchors, tangent_scale, spk + 1);

    bool still = true;
    for (std::size_t i = a + 1; i <= b && still; ++i) still = q[a].angle_to(q[i]) < M_PI / 180.0;
    const double total = static_cast<double>((b - a) * static_cast<std::size_t>(spk));
    for (std::size_t s = 1; s < pos.size(); ++s) {
      const std::size_t key = a + (s - 1) / static_cast<std::size_t>(spk);
      const double local = static_cast<double>((s - 1) % static_cast<std::size_t>(spk) + 1) / spk;
      UnitQuaternion o;
      if (still) {
        o = s + 1 == pos.size() ? q[b] : slerp(q[a], q[b], static_cast<double>(s) / total);
      } else {
        o = local >= 1.0 ? q[key + 1] : slerp(q[key], q[key + 1], local);
      }
      out.poses.push_back({pos[s], o});
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.keypoint_samples.push_back(i * static_cast<std::size_t>(spk));
  out.grasp_sample = out.keypoint_samples[g];
  out.release_sample = out.keypoint_samples[r];
  return out;
}

Trajectory plan_to_demonstration(const ManipulationPlan& plan, const DensePath& path,
                                 const GraspSet& grasps, const KinematicTree& hand,
                                 const ObjectModel& obj, double fps, const PlanTolerance& tol) {
  if (plan.selected_grasp < 0 || static_cast<std::size_t>(plan.selected_grasp) >= grasps.size()) {
    throw ParseError("selected_grasp", "grasp " + std::to_string(plan.selected_grasp) +
                                           " not in a set of " + std::to_string(grasps.size()));
  }
  if (path.poses.empty() || path.release_sample >= path.poses.size() ||
      path.grasp_sample >= path.release_sample) {
    throw std::invalid_argument("dense path does not match the plan");
  }
  const GraspConfiguration& g = grasps[static_cast<std::size_t>(plan.selected_grasp)];
  const Pose& key = path.poses[path.grasp_sample];
  if (position_distance(g.wrist, key) > tol.position || rotation_distance(g.wrist, key) > tol.angle) {
    throw SynthesisError("selected grasp wrist " + describe(g.wrist) +
                         " is incompatible with grasp keypoint " + describe(key));
  }
  const GraspConfiguration held = transform_grasp(g, key * g.wrist.inverse());
  const Pose relative = held.object.inverse() * key;
  const Pose object_rest = held.object;
  std::vector<double> open(hand.dof(), 0.0);
  open = hand.clamp_to_limits(open);

  Trajectory t;
  t.fps = fps;
  t.meta.skills = {"grasp", "move", "place"};
  t.meta.object = obj.id();
  t.meta.hand_model = hand.id();
  t.meta.scale = obj.scale();

  const std::size_t n = path.poses.size();
  const std::size_t gs = path.grasp_sample;
  const std::size_t rs = path.release_sample;
  Pose released = object_rest;
  for (std::size_t s = 0; s < n; ++s) {
    const Pose& wrist = path.poses[s];
    if (s < gs) {
      t.frames.push_back(make_frame(hand, &obj, wrist, open, object_rest, false, Phase::grasp));
    } else if (s <= rs) {
      const Pose o = s == gs ? object_rest : wrist * relative.inverse();
      t.frames.push_back(make_frame(hand, &obj, wrist, g.theta, o, true, Phase::move));
      released = o;
    } else {
      const double u = static_cast<double>(s - rs) / static_cast<double>(n - 1 - rs);
      std::vector<double> theta(g.theta.size());
      for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] = u >= 1.0 ? open[i] : g.theta[i] + u * (open[i] - g.theta[i]);
      }
      t.frames.push_back(make_frame(hand, &obj, wrist, theta, released, false, Phase::place));
    }
  }
  return t;
}

}  // namespace hopkit
