#include "hopkit/reward/reward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hopkit/simd/kernels.hpp"

namespace hopkit {

void RewardConfig::validate() const {
  for (double l : {lambda_p, lambda_r, lambda_p_regrasp, lambda_r_regrasp, lambda_wp, lambda_wr,
                   lambda_op, lambda_or, lambda_interact, lambda_contact}) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("reward weights must be positive");
  }
  if (!(interact_gain >= 0.0)) throw std::invalid_argument("interaction gain must be >= 0");
  if (!(interact_d_near < interact_d_far)) throw std::invalid_argument("need d_near < d_far");
}

std::string_view term_name(Term t) {
  static constexpr std::array<std::string_view, kTermCount> names{
      "p", "r", "wp", "wr", "op", "or", "interact", "contact"};
  return names[static_cast<std::size_t>(t)];
}

double sub_reward(double error, double lambda) { return std::exp(-lambda * error); }

double dynamic_interact_lambda(double d, const RewardConfig& cfg) {
  const double ramp =
      std::clamp((cfg.interact_d_far - d) / (cfg.interact_d_far - cfg.interact_d_near), 0.0, 1.0);
  return cfg.lambda_interact * (1.0 + cfg.interact_gain * ramp);
}

namespace {

double min_distance(const PointList& a, const PointList& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : a) {
    for (const Vec3& q : b) best = std::min(best, (p - q).norm());
  }
  return best;
}

}  // namespace

FrameReward frame_reward(const Frame& roll, const Frame& ref, const RewardConfig& cfg) {
  if (roll.joints.size() != ref.joints.size() || roll.theta.size() != ref.theta.size() ||
      roll.contact.size() != ref.contact.size()) {
    throw std::invalid_argument("frame_reward: hand keypoint counts differ");
  }
  if (roll.object_keypoints.size() != ref.object_keypoints.size()) {
    throw std::invalid_argument("frame_reward: object keypoint counts differ");
  }
  FrameReward out;
  auto set = [&](Term t, double error, double lambda) {
    const auto i = static_cast<std::size_t>(t);
    out.errors[i] = error;
    out.components[i] = sub_reward(error, lambda);
  };

  const bool regrasp = ref.phase == Phase::regrasp;
  const double e_p = ref.joints.empty() ? 0.0 : simd::mean_distance(roll.joints, ref.joints);
  double e_r = 0.0;
  for (std::size_t i = 0; i < ref.theta.size(); ++i) e_r += std::abs(roll.theta[i] - ref.theta[i]);
  if (!ref.theta.empty()) e_r /= static_cast<double>(ref.theta.size());
  set(Term::p, e_p, regrasp ? cfg.lambda_p_regrasp : cfg.lambda_p);
  set(Term::r, e_r, regrasp ? cfg.lambda_r_regrasp : cfg.lambda_r);
  set(Term::wp, position_distance(roll.wrist, ref.wrist), cfg.lambda_wp);
  set(Term::wr, rotation_distance(roll.wrist, ref.wrist), cfg.lambda_wr);

  if (ref.object) {
    if (!roll.object) throw std::invalid_argument("frame_reward: rollout lacks an object channel");
    set(Term::op, position_distance(*roll.object, *ref.object), cfg.lambda_op);
    set(Term::or_, rotation_distance(*roll.object, *ref.object), cfg.lambda_or);
    if (!ref.object_keypoints.empty() && !ref.joints.empty()) {
      PointList d_obj(ref.object_keypoints.size());
      PointList d_hand(ref.joints.size());
      for (std::size_t j = 0; j < d_obj.size(); ++j) {
        d_obj[j] = roll.object_keypoints[j] - ref.object_keypoints[j];
      }
      for (std::size_t i = 0; i < d_hand.size(); ++i) d_hand[i] = roll.joints[i] - ref.joints[i];
      const double lambda =
          dynamic_interact_lambda(min_distance(ref.joints, ref.object_keypoints), cfg);
      set(Term::interact, simd::mean_pairwise_distance(d_obj, d_hand), lambda);
    }
  }

  if (!ref.contact.empty()) {
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < ref.contact.size(); ++i) mismatched += roll.contact[i] != ref.contact[i];
    set(Term::contact, static_cast<double>(mismatched) / static_cast<double>(ref.contact.size()),
        cfg.lambda_contact);
  }

  out.total = 1.0;
  for (double c : out.components) out.total *= c;
  return out;
}

double trajectory_mean_reward(const Trajectory& roll, const Trajectory& ref,
                              const RewardConfig& cfg) {
  if (roll.frames.size() != ref.frames.size()) {
    throw std::invalid_argument("trajectory lengths differ: " + std::to_string(roll.frames.size()) +
                                " vs " + std::to_string(ref.frames.size()));
  }
  if (roll.fps != ref.fps) throw std::invalid_argument("trajectory fps differ");
  if (ref.frames.empty()) throw std::invalid_argument("empty trajectory");
  double sum = 0.0;
  for (std::size_t t = 0; t < ref.frames.size(); ++t) {
    sum += frame_reward(roll.frames[t], ref.frames[t], cfg).total;
  }
  return sum / static_cast<double>(ref.frames.size());
}

}  // namespace hopkit
