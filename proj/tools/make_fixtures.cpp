// Regenerates the hand, object, grasp and plan fixtures under data/.
// Usage: make_fixtures <data-dir>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "hopkit/geom/random.hpp"
#include "hopkit/grasp/grasp.hpp"
#include "hopkit/io/json_util.hpp"
#include "hopkit/plan/plan.hpp"
#include "hopkit/scene/predicates.hpp"

namespace fs = std::filesystem;
using namespace hopkit;

namespace {

// ---- hands ---------------------------------------------------------------

struct AxisSpec {
  Vec3 axis;
  double lower, upper;
};

struct FingerSpec {
  std::string name;
  Vec3 base;             // first joint, wrist frame
  Vec3 direction;        // bone direction at zero pose
  Vec3 flex_axis;        // curls the finger toward the palm (-z)
  double lengths[3];     // bone lengths: 1->2, 2->3, 3->tip
  std::vector<AxisSpec> axes[3];
};

struct HandSpec {
  std::string id;
  std::vector<FingerSpec> fingers;
};

// Fingers point along +x, the palm faces -z and the thumb sits on +y.
FingerSpec finger(const std::string& name, Vec3 base, Vec3 dir, Vec3 flex, double l1, double l2,
                  double l3) {
  FingerSpec f;
  f.name = name;
  f.base = base;
  f.direction = dir.normalized();
  f.flex_axis = flex.normalized();
  f.lengths[0] = l1;
  f.lengths[1] = l2;
  f.lengths[2] = l3;
  return f;
}

HandSpec mano_spec() {
  HandSpec h{"mano", {}};
  const Vec3 flex(0, 1, 0), abd(0, 0, 1);
  auto add = [&](FingerSpec f, double flex_lo, double flex_hi) {
    for (int j = 0; j < 3; ++j) {
      const double spread = j == 0 ? 0.3 : 0.1;
      f.axes[j] = {{f.flex_axis, flex_lo, flex_hi}, {abd, -spread, spread}, {f.direction, -0.15, 0.15}};
    }
    h.fingers.push_back(f);
  };
  add(finger("index", {0.090, 0.022, 0}, {1, 0, 0}, flex, 0.040, 0.025, 0.020), -0.1, 1.6);
  add(finger("middle", {0.094, 0.000, 0}, {1, 0, 0}, flex, 0.044, 0.028, 0.021), -0.1, 1.6);
  add(finger("ring", {0.088, -0.020, 0}, {1, 0, 0}, flex, 0.040, 0.026, 0.020), -0.1, 1.6);
  add(finger("pinky", {0.080, -0.038, 0}, {1, 0, 0}, flex, 0.032, 0.020, 0.018), -0.1, 1.6);
  add(finger("thumb", {0.025, 0.035, -0.010}, {0.7, 0.7, 0}, {-0.7, 0.7, 0}, 0.038, 0.032, 0.025),
      -0.3, 1.3);
  return h;
}

HandSpec shadow_spec() {
  HandSpec h{"shadow", {}};
  const Vec3 flex(0, 1, 0), abd(0, 0, 1);
  auto add = [&](FingerSpec f, double flex_hi) {
    f.axes[0] = {{f.flex_axis, -0.26, flex_hi}, {abd, -0.35, 0.35}};
    f.axes[1] = {{f.flex_axis, 0.0, flex_hi}};
    f.axes[2] = {{f.flex_axis, 0.0, flex_hi}};
    h.fingers.push_back(f);
  };
  add(finger("index", {0.095, 0.022, 0}, {1, 0, 0}, flex, 0.045, 0.025, 0.026), 1.57);
  add(finger("middle", {0.099, 0.000, 0}, {1, 0, 0}, flex, 0.045, 0.025, 0.026), 1.57);
  add(finger("ring", {0.095, -0.022, 0}, {1, 0, 0}, flex, 0.045, 0.025, 0.026), 1.57);
  add(finger("little", {0.086, -0.044, 0}, {1, 0, 0}, flex, 0.045, 0.025, 0.026), 1.57);
  add(finger("thumb", {0.034, 0.034, -0.010}, {0.7, 0.7, 0}, {-0.7, 0.7, 0}, 0.038, 0.032, 0.027),
      1.2);
  return h;
}

HandSpec allegro_spec() {
  HandSpec h{"allegro", {}};
  const Vec3 flex(0, 1, 0), abd(0, 0, 1);
  auto add = [&](FingerSpec f, double flex_hi) {
    f.axes[0] = {{abd, -0.47, 0.47}, {f.flex_axis, -0.19, flex_hi}};
    f.axes[1] = {{f.flex_axis, -0.17, flex_hi}};
    f.axes[2] = {{f.flex_axis, -0.23, flex_hi}};
    h.fingers.push_back(f);
  };
  add(finger("index", {0.095, 0.045, 0}, {1, 0, 0}, flex, 0.054, 0.038, 0.045), 1.6);
  add(finger("middle", {0.095, 0.000, 0}, {1, 0, 0}, flex, 0.054, 0.038, 0.045), 1.6);
  add(finger("ring", {0.095, -0.045, 0}, {1, 0, 0}, flex, 0.054, 0.038, 0.045), 1.6);
  add(finger("thumb", {0.030, 0.045, -0.015}, {0.7, 0.7, 0}, {-0.7, 0.7, 0}, 0.055, 0.050, 0.060),
      1.4);
  return h;
}

io::Json hand_json(const HandSpec& spec) {
  io::Json joints = io::Json::array();
  joints.push_back({{"name", "wrist"}, {"parent", -1}, {"offset", {0.0, 0.0, 0.0}}});
  io::Json tips = io::Json::array();
  io::Json keypoints = io::Json::object();
  keypoints["wrist"] = "wrist";
  int next = 1;
  for (const FingerSpec& f : spec.fingers) {
    int parent = 0;
    for (int j = 0; j < 4; ++j) {
      const std::string name = f.name + (j == 3 ? "_tip" : "_" + std::to_string(j + 1));
      const Vec3 off = j == 0 ? f.base : Vec3(f.direction * f.lengths[j - 1]);
      io::Json e{{"name", name}, {"parent", parent}, {"offset", io::write_vec3(off)}};
      if (j < 3) {
        io::Json axes = io::Json::array(), limits = io::Json::array();
        for (const AxisSpec& a : f.axes[j]) {
          axes.push_back(io::write_vec3(a.axis));
          limits.push_back({a.lower, a.upper});
        }
        e["axes"] = axes;
        e["limits"] = limits;
      }
      joints.push_back(e);
      parent = next++;
    }
    tips.push_back(f.name + "_tip");
    keypoints[f.name + "_first_joint"] = f.name + "_1";
    keypoints[f.name + "_tip"] = f.name + "_tip";
  }
  return {{"id", spec.id}, {"joints", joints}, {"fingertips", tips}, {"keypoints", keypoints}};
}

// DoF ranges of each finger's flexion axes, in hand DoF order.
std::vector<std::vector<std::pair<std::size_t, double>>> flex_dofs(const HandSpec& spec) {
  std::vector<std::vector<std::pair<std::size_t, double>>> out;
  std::size_t dof = 0;
  for (const FingerSpec& f : spec.fingers) {
    std::vector<std::pair<std::size_t, double>> finger;
    for (int j = 0; j < 3; ++j) {
      for (const AxisSpec& a : f.axes[j]) {
        if ((a.axis - f.flex_axis).norm() < 1e-12) finger.push_back({dof, a.upper});
        ++dof;
      }
    }
    out.push_back(finger);
  }
  return out;
}

// ---- objects -------------------------------------------------------------

io::Json points_json(const PointList& pts) { return io::write_points(pts); }

io::Json cube_json() {
  const double h = 0.03;
  PointList corners;
  for (int i = 0; i < 8; ++i) corners.emplace_back(i & 1 ? h : -h, i & 2 ? h : -h, i & 4 ? h : -h);
  return {{"id", "cube"}, {"keypoints", points_json(corners)}, {"hull", points_json(corners)},
          {"com", {0.0, 0.0, 0.0}}};
}

PointList prism(int sides, double radius, double half_length, int axis) {
  PointList pts;
  for (int s : {-1, 1}) {
    for (int k = 0; k < sides; ++k) {
      const double a = 2.0 * M_PI * k / sides;
      Vec3 p(radius * std::cos(a), radius * std::sin(a), s * half_length);
      if (axis == 0) p = Vec3(p.z(), p.x(), p.y());
      pts.push_back(p);
    }
  }
  return pts;
}

PointList ring_keypoints(double radius, double half_length, int axis) {
  PointList kp;
  for (int s : {-1, 1}) {
    for (int k = 0; k < 4; ++k) {
      const double a = M_PI / 2 * k;
      Vec3 p(radius * std::cos(a), radius * std::sin(a), s * half_length);
      if (axis == 0) p = Vec3(p.z(), p.x(), p.y());
      kp.push_back(p);
    }
  }
  return kp;
}

io::Json bottle_json() {
  const double r = 0.03, hl = 0.10;
  return {{"id", "bottle"},
          {"keypoints", points_json(ring_keypoints(r, hl, 2))},
          {"hull", points_json(prism(16, r, hl, 2))},
          {"com", {0.0, 0.0, -0.02}},
          {"rotatable", {{"center", {0.0, 0.0, 0.0}}, {"radius", r}, {"half_length", hl}}},
          {"axis", {0.0, 0.0, 1.0}}};
}

io::Json rod_json() {
  const double r = 0.02, hl = 0.12;
  return {{"id", "rod"},
          {"keypoints", points_json(ring_keypoints(r, hl, 0))},
          {"hull", points_json(prism(16, r, hl, 0))},
          {"com", {0.0, 0.0, 0.0}},
          {"rotatable", {{"center", {0.0, 0.0, 0.0}}, {"radius", r}, {"half_length", hl}}},
          {"axis", {1.0, 0.0, 0.0}}};
}

io::Json tetrahedron_json() {
  const double a = 0.08 / (2.0 * std::sqrt(2.0));
  const PointList v{{a, a, a}, {a, -a, -a}, {-a, a, -a}, {-a, -a, a}};
  return {{"id", "tetrahedron"}, {"keypoints", points_json(v)}, {"hull", points_json(v)},
          {"com", {0.0, 0.0, 0.0}}};
}

// ---- grasps --------------------------------------------------------------

struct GraspSearch {
  const HandSpec* spec;
  const KinematicTree* hand;
  const ObjectModel* obj;
};

double world_distance(const ObjectModel& obj, const Pose& pose, const Vec3& p) {
  return obj.hull().signed_distance(pose.inverse().apply(p));
}

// Top-down grasp on the object resting at `pose`: each finger curls until a
// non-base joint touches the hull.
bool try_grasp(const GraspSearch& s, const Pose& pose, Rng& rng, GraspConfiguration& out) {
  const KinematicTree& hand = *s.hand;
  const ObjectModel& obj = *s.obj;
  double top = -1e9;
  for (const Vec3& v : obj.hull().vertices()) top = std::max(top, pose.apply(v).z());
  const Vec3 center = pose.apply(obj.com());

  const UnitQuaternion yaw = UnitQuaternion::from_axis_angle(Vec3::UnitZ(), rng.uniform(0, 2 * M_PI));
  Vec3 wrist_p = center - yaw.rotate(Vec3(rng.uniform(0.045, 0.07), rng.uniform(-0.01, 0.01), 0.0));
  wrist_p.z() = top + rng.uniform(0.012, 0.025);
  const Pose wrist{wrist_p, yaw};

  std::vector<double> theta = hand.clamp_to_limits(std::vector<double>(hand.dof(), 0.0));
  const auto fingers = flex_dofs(*s.spec);
  // Finger f owns joints 1 + 4f .. 4 + 4f (the last is the tip). Curling
  // stops at the first hull contact or near the ground.
  for (std::size_t f = 0; f < fingers.size(); ++f) {
    auto touches = [&](double u) {
      std::vector<double> th = theta;
      for (auto [dof, hi] : fingers[f]) th[dof] = u * hi;
      const PointList j = forward_kinematics(hand, wrist, th);
      for (std::size_t k = 1; k < 4; ++k) {
        const Vec3& p = j[1 + 4 * f + k];
        if (p.z() < 0.005 || world_distance(obj, pose, p) <= 0.002) return true;
      }
      return false;
    };
    double lo = 0.0, hi = 1.0;
    if (touches(0.0)) return false;
    if (touches(1.0)) {
      for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        (touches(mid) ? hi : lo) = mid;
      }
    }
    for (auto [dof, upper] : fingers[f]) theta[dof] = hi * upper;
  }

  const PointList joints = forward_kinematics(hand, wrist, theta);
  int contacts = 0;  // fingers with a joint on the hull
  for (std::size_t f = 0; f < fingers.size(); ++f) {
    bool touching = false;
    for (std::size_t k = 1; k < 4; ++k) {
      touching = touching || world_distance(obj, pose, joints[1 + 4 * f + k]) <= 0.006;
    }
    contacts += touching;
  }
  if (contacts < 2) return false;
  if (hand_object_clearance(joints, obj, pose) < -0.004) return false;
  for (const Vec3& p : joints) {
    if (p.z() < 0.002) return false;
  }
  out = {wrist, theta, joints, pose, obj.world_keypoints(pose), hand.id(), obj.id()};
  return true;
}

GraspSet make_grasps(const GraspSearch& s, std::size_t per_pose, std::size_t max_poses,
                     std::uint64_t seed) {
  Rng rng(seed);
  GraspSet set{s.hand->id(), s.obj->id(), {}};
  const auto stable = enumerate_stable_poses(*s.obj);
  for (std::size_t p = 0; p < std::min(max_poses, stable.size()); ++p) {
    std::size_t made = 0;
    for (int attempt = 0; attempt < 4000 && made < per_pose; ++attempt) {
      GraspConfiguration g;
      if (try_grasp(s, stable[p].pose, rng, g)) {
        set.grasps.push_back(std::move(g));
        ++made;
      }
    }
  }
  return set;
}

void write(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  io::write_file(path, text);
  std::cout << "wrote " << path.string() << "\n";
}

// Nine-keypoint pick-and-place of the upright bottle using grasp 0.
ManipulationPlan bottle_plan(const GraspSet& grasps) {
  const GraspConfiguration& g = grasps[0];
  const Pose rel = g.object.inverse() * g.wrist;
  const Pose dest{Vec3(0.20, 0.10, g.object.position.z()),
                  UnitQuaternion::from_axis_angle(Vec3::UnitZ(), 0.5) * g.object.orientation};
  const Pose release = dest * rel;
  auto up = [](Pose p, double dz) {
    p.position.z() += dz;
    return p;
  };
  auto mix = [](const Pose& a, const Pose& b, double u) { return lerp_pose(a, b, u); };

  ManipulationPlan plan;
  plan.object = "bottle";
  plan.selected_grasp = 0;
  plan.grasp_index = 3;
  plan.release_index = 8;
  const Pose lift = up(g.wrist, 0.15);
  const Pose over = up(release, 0.15);
  const std::vector<std::pair<Pose, PlanAction>> poses{
      {up(mix(g.wrist, release, -0.3), 0.25), PlanAction::start},
      {up(g.wrist, 0.08), PlanAction::approach},
      {g.wrist, PlanAction::grasp},
      {up(g.wrist, 0.06), PlanAction::transport},
      {lift, PlanAction::transport},
      {mix(lift, over, 0.5), PlanAction::transport},
      {over, PlanAction::transport},
      {release, PlanAction::release},
      {up(release, 0.12), PlanAction::end}};
  for (std::size_t i = 0; i < poses.size(); ++i) {
    plan.keypoints.push_back({static_cast<long>(i + 1), poses[i].first, poses[i].second});
  }
  return plan;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <data-dir>\n";
    return 2;
  }
  const fs::path root = argv[1];
  std::vector<HandSpec> specs{mano_spec(), shadow_spec(), allegro_spec()};
  std::vector<KinematicTree> hands;
  for (const HandSpec& s : specs) {
    const std::string text = hand_json(s).dump(1) + "\n";
    write(root / "hands" / (s.id + ".json"), text);
    hands.push_back(parse_hand_model(text));
  }

  std::vector<ObjectModel> objects;
  for (const io::Json& j : {cube_json(), bottle_json(), tetrahedron_json(), rod_json()}) {
    const std::string text = j.dump(1) + "\n";
    write(root / "objects" / (j["id"].get<std::string>() + ".json"), text);
    objects.push_back(parse_object_model(text));
  }

  std::uint64_t seed = 1;
  for (std::size_t h = 0; h < hands.size(); ++h) {
    for (const ObjectModel& obj : objects) {
      if (h > 0 && obj.id() != "cube") continue;
      const GraspSearch search{&specs[h], &hands[h], &obj};
      const std::size_t poses = obj.id() == "bottle" ? 1 : 6;
      const GraspSet set = make_grasps(search, obj.id() == "bottle" ? 24 : 6, poses, seed++);
      const fs::path path = root / "grasps" / (hands[h].id() + "_" + obj.id() + ".json");
      write(path, grasp_set_to_json(set) + "\n");
      std::cout << "  " << set.size() << " grasps\n";
      load_grasp_set(path, hands[h], obj);  // strict re-validation
      if (h == 0 && obj.id() == "bottle") {
        write(root / "plans" / "bottle_upright.json", plan_to_json(bottle_plan(set)));
      }
    }
  }
  return 0;
}
