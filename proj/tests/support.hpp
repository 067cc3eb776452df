#pragma once

// Fixture loading and random data shared by the test binaries.

#include <filesystem>
#include <string>

#include "hopkit/geom/random.hpp"
#include "hopkit/grasp/grasp.hpp"
#include "hopkit/synth/skills.hpp"

namespace hopkit::test {

inline std::filesystem::path data(const std::string& rel) {
  return std::filesystem::path(HOPKIT_DATA_DIR) / rel;
}

struct Fixture {
  KinematicTree hand;
  ObjectModel obj;
  GraspSet grasps;
  SkillInputs in;

  Fixture(const std::string& hand_id, const std::string& obj_id)
      : hand(load_hand_model(data("hands/" + hand_id + ".json"))),
        obj(load_object_model(data("objects/" + obj_id + ".json"))),
        grasps(load_grasp_set(data("grasps/" + hand_id + "_" + obj_id + ".json"), hand, obj).set),
        in(SkillInputs::make(hand, obj, grasps)) {}
  Fixture(const Fixture&) = delete;
};

inline Pose random_pose(Rng& rng, double extent = 0.5) {
  return {rng.in_box(Vec3::Constant(-extent), Vec3::Constant(extent)), rng.rotation()};
}

inline std::vector<double> random_theta(const KinematicTree& hand, Rng& rng) {
  std::vector<double> t;
  for (const JointLimit& l : hand.dof_limits()) t.push_back(rng.uniform(l.lower, l.upper));
  return t;
}

inline Frame random_frame(const KinematicTree& hand, const ObjectModel& obj, Rng& rng,
                          Phase phase = Phase::move) {
  Frame f = make_frame(hand, &obj, random_pose(rng), random_theta(hand, rng), random_pose(rng),
                       false, phase);
  for (std::size_t i = 0; i < f.contact.size(); ++i) f.contact[i] = rng.bernoulli(0.5);
  return f;
}

inline bool same_pose(const Pose& a, const Pose& b) {
  return a.position == b.position && a.orientation == b.orientation;
}

inline bool same_frame(const Frame& a, const Frame& b) {
  return same_pose(a.wrist, b.wrist) && a.theta == b.theta && a.joints == b.joints &&
         a.object.has_value() == b.object.has_value() &&
         (!a.object || same_pose(*a.object, *b.object)) &&
         a.object_keypoints == b.object_keypoints && a.contact == b.contact;
}

}  // namespace hopkit::test
