#pragma once

#include <span>
#include <vector>

#include "hopkit/geom/interpolation.hpp"
#include "hopkit/geom/random.hpp"
#include "hopkit/grasp/grasp.hpp"
#include "hopkit/scene/predicates.hpp"
#include "hopkit/synth/frame.hpp"

namespace hopkit {

struct SynthConfig {
  Workspace workspace;
  int clip_frames = 60;  // frames per interpolated clip
  double fps = 60.0;
  std::uint64_t seed = 0;

  // Grasp approach cone around object center -> index-finger base.
  double cone_half_angle = M_PI / 6.0;
  double cone_r_min = 0.15;
  double cone_r_max = 0.35;
  // Trailing frames of Grasp/Catch flagged as in contact.
  int contact_frames = 1;
  int resample_budget = 100;
  // Lowest object height for poses sampled in the air (Move, Catch, Rotate).
  double air_min_height = 0.15;

  // Rotate (simple): keyframes, per-step angle range and replication.
  int rotate_keyframes = 4;
  double rotate_max_step = M_PI / 3.0;
  double replication_gain = 40.0;  // frames per radian
  int replication_min = 5;
  ContactCriteria rotate_contact;

  // General Rotate / Regrasp chains.
  int chain_hold_frames = 15;
  GraspMetricWeights metric;

  // Catch / Throw.
  double gravity = 9.81;
  double catch_clearance_threshold = -0.005;

  TrajectoryLimits limits;

  void validate() const;
};

// Shared read-only inputs of the object-centric synthesizers.
struct SkillInputs {
  const KinematicTree* hand = nullptr;
  const ObjectModel* object = nullptr;
  const GraspSet* grasps = nullptr;
  std::vector<StablePose> stable_poses;

  static SkillInputs make(const KinematicTree& hand, const ObjectModel& obj, const GraspSet& grasps);
};

// Hold length: max(n_min, round(gain * delta)).
int replication_count(double delta_angle, double gain, int n_min);

// Greedy nearest-neighbour chain without replacement: start, then k
// successive nearest unused entries.
std::vector<std::size_t> greedy_chain(const GraspSet& pool, std::size_t start, int k,
                                      const GraspMetricWeights& w);

Trajectory synth_free_move(const SynthConfig& cfg, const KinematicTree& hand, Rng& rng);

// `end`, when given, pins the final frame (used to chain after Move).
Trajectory synth_grasp(const SynthConfig& cfg, const SkillInputs& in, Rng& rng,
                       const Frame* end = nullptr);
// Reversed Grasp; `start` pins the first frame.
Trajectory synth_place(const SynthConfig& cfg, const SkillInputs& in, Rng& rng,
                       const Frame* start = nullptr);

struct MoveBoundary {
  const Frame* start = nullptr;
  const Frame* end = nullptr;
  // Final object pose = initial pose turned about world z and shifted in
  // x/y, so an object resting on the ground ends resting on the ground.
  bool end_on_ground = false;
};
Trajectory synth_move(const SynthConfig& cfg, const SkillInputs& in, Rng& rng,
                      const MoveBoundary& boundary = {});

Trajectory synth_rotate_simple(const SynthConfig& cfg, const SkillInputs& in, Rng& rng);
Trajectory synth_rotate_general(const SynthConfig& cfg, const SkillInputs& in, Rng& rng, int k);
Trajectory synth_regrasp(const SynthConfig& cfg, const SkillInputs& in, Rng& rng, int k);
Trajectory synth_catch(const SynthConfig& cfg, const SkillInputs& in, Rng& rng);
Trajectory synth_throw(const SynthConfig& cfg, const SkillInputs& in, Rng& rng);

// Concatenates clips whose boundary frames agree within 1 mm / 1 degree,
// dropping the duplicated boundary frame of each join.
Trajectory compose(std::span<const Trajectory> clips, double position_tol = 1e-3,
                   double angle_tol = M_PI / 180.0);

// Grasp -> Move -> Place chain with pinned boundaries.
Trajectory synth_grasp_move_place(const SynthConfig& cfg, const SkillInputs& in, Rng& rng);

}  // namespace hopkit
