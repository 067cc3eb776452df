#include <algorithm>
#include <stdexcept>

#include "hopkit/training/training.hpp"

namespace hopkit {

void CurriculumConfig::validate() const {
  for (double p : {scale_probability, perturb_probability_regrasp, perturb_probability_other,
                   contact_position_factor}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (!(scale_min > 0.0 && scale_min <= scale_max)) {
    throw std::invalid_argument("scale range must satisfy 0 < min <= max");
  }
  for (double a : {amp_dof, amp_dof_velocity, amp_object_velocity, amp_object_rotation,
                   amp_object_position}) {
    if (!(a >= 0.0)) throw std::invalid_argument("amplitudes must be >= 0");
  }
  if (transition_epoch < 0 || ramp_epochs < 1 || !(ramp_cap >= 1.0)) {
    throw std::invalid_argument("stage-2 ramp needs epoch >= 0, length >= 1, cap >= 1");
  }
}

double amplitude_multiplier(const CurriculumConfig& cfg, int stage, long epoch) {
  if (stage < 2) return 1.0;
  const double u = std::clamp(static_cast<double>(epoch - cfg.transition_epoch) /
                                  static_cast<double>(cfg.ramp_epochs),
                              0.0, 1.0);
  return 1.0 + (cfg.ramp_cap - 1.0) * u;
}

double sample_object_scale(const CurriculumConfig& cfg, Rng& rng, int stage) {
  if (stage < 2 || cfg.scale_probability <= 0.0) return 1.0;
  if (!rng.bernoulli(cfg.scale_probability)) return 1.0;
  return rng.uniform(cfg.scale_min, cfg.scale_max);
}

PerturbedState perturb_initial_state(const Frame& frame, const KinematicTree& hand,
                                     const ObjectModel* obj, const CurriculumConfig& cfg,
                                     int stage, long epoch, Rng& rng) {
  PerturbedState out;
  out.frame = frame;
  out.dof_velocity.assign(frame.theta.size(), 0.0);
  const double p = frame.phase == Phase::regrasp ? cfg.perturb_probability_regrasp
                                                 : cfg.perturb_probability_other;
  if (p <= 0.0 || !rng.bernoulli(p)) return out;
  out.perturbed = true;

  const double m = amplitude_multiplier(cfg, stage, epoch);
  std::vector<double> theta = frame.theta;
  for (double& a : theta) a += rng.uniform(-cfg.amp_dof * m, cfg.amp_dof * m);
  theta = hand.clamp_to_limits(theta);
  for (double& v : out.dof_velocity) {
    v = rng.uniform(-cfg.amp_dof_velocity * m, cfg.amp_dof_velocity * m);
  }

  std::optional<Pose> object = frame.object;
  if (object) {
    const bool in_contact = std::any_of(frame.contact.begin(), frame.contact.end(),
                                        [](bool c) { return c; });
    for (int i = 0; i < 3; ++i) {
      out.object_linear_velocity[i] =
          rng.uniform(-cfg.amp_object_velocity * m, cfg.amp_object_velocity * m);
    }
    const double pos_amp =
        cfg.amp_object_position * m * (in_contact ? cfg.contact_position_factor : 1.0);
    Vec3 shift;
    for (int i = 0; i < 3; ++i) shift[i] = rng.uniform(-pos_amp, pos_amp);
    const Vec3 axis = in_contact ? Vec3(Vec3::UnitZ()) : rng.unit_vector();
    const double angle =
        rng.uniform(-cfg.amp_object_rotation * m, cfg.amp_object_rotation * m);
    const UnitQuaternion turn = UnitQuaternion::from_axis_angle(axis, angle);
    object = Pose{object->position + shift, turn * object->orientation};
  }

  Frame f = make_frame(hand, obj, frame.wrist, theta, obj != nullptr ? object : std::nullopt,
                       false, frame.phase);
  f.contact = frame.contact;
  if (obj == nullptr && object) {
    // No model to recompute keypoints: move the stored ones rigidly.
    f.object = object;
    f.object_keypoints = transform_points(*object * frame.object->inverse(), frame.object_keypoints);
  }
  out.frame = std::move(f);
  return out;
}

}  // namespace hopkit
