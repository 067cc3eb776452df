#pragma once

#include <span>
#include <string>
#include <vector>

#include "hopkit/geom/random.hpp"
#include "hopkit/synth/frame.hpp"

namespace hopkit {

// Softmax over -lambda_s * mean_reward, shifted by the smallest reward so
// every exponent is <= 0. Throws on empty input, non-finite rewards or
// negative lambda_s.
std::vector<double> sampling_probabilities(std::span<const double> mean_rewards, double lambda_s);

struct CurriculumConfig {
  double scale_probability = 0.2;
  double scale_min = 0.75;
  double scale_max = 1.5;

  double perturb_probability_regrasp = 0.5;
  double perturb_probability_other = 0.3;
  double amp_dof = M_PI / 8.0;    // rad
  double amp_dof_velocity = 0.1;  // rad/s
  double amp_object_velocity = 0.02;  // m/s
  double amp_object_rotation = 0.02;  // rad
  double amp_object_position = 0.02;  // m
  // Position noise factor on frames with any fingertip in contact.
  double contact_position_factor = 0.25;

  // Stage-2 amplitude multiplier: 1 at the transition epoch, growing
  // linearly to `ramp_cap` over `ramp_epochs`.
  int transition_epoch = 2000;
  int ramp_epochs = 2000;
  double ramp_cap = 1.5;

  void validate() const;
};

double amplitude_multiplier(const CurriculumConfig& cfg, int stage, long epoch);

double sample_object_scale(const CurriculumConfig& cfg, Rng& rng, int stage);

struct PerturbedState {
  Frame frame;
  std::vector<double> dof_velocity;
  Vec3 object_linear_velocity = Vec3::Zero();
  bool perturbed = false;
};

// Bounded uniform noise on an initial state. Finger angles are clamped to
// the joint limits and joints are recomputed by FK. Frames with a contact
// flag set get reduced position noise and rotation about world z only.
PerturbedState perturb_initial_state(const Frame& frame, const KinematicTree& hand,
                                     const ObjectModel* obj, const CurriculumConfig& cfg,
                                     int stage, long epoch, Rng& rng);

struct LossWeights {
  double expert = 0.0;
  double policy_gradient = 0.0;
  double value = 0.0;
  double boundary = 0.0;
};

struct DistillConfig {
  long stage2_start = 500;
  long stage3_start = 5000;
  long stage4_start = 7000;
  double ev_threshold = 0.6;
  int ev_consecutive = 3;
  long ev_window = 100;  // epochs per explained-variance reading
  LossWeights stage3{1.0, 1.0, 0.5, 0.0};  // policy gradient gated on EV
  LossWeights stage4{0.1, 1.0, 0.5, 0.01};

  void validate() const;
};

struct DistillState {
  long epoch = 0;
  std::vector<double> ev_history;  // one reading per window, oldest first
};

struct DistillDecision {
  int stage = 1;
  double teacher_probability = 1.0;
  LossWeights weights;
  bool policy_gradient_active = false;
};

// True once the history contains `ev_consecutive` successive readings above
// the threshold.
bool ev_gate_open(std::span<const double> ev_history, const DistillConfig& cfg);

DistillDecision distill_schedule(const DistillState& state, const DistillConfig& cfg = {});

// CSV rows epoch,stage,teacher_prob,expert,policy_gradient,value,boundary
// for epochs first, first+step, ... <= last, gate readings taken from
// `ev_history` as they become available (one per window).
std::string schedule_csv(long first, long last, long step, std::span<const double> ev_history,
                         const DistillConfig& cfg = {});

}  // namespace hopkit
