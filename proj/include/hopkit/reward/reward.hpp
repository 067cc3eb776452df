#pragma once

#include <array>
#include <string_view>

#include "hopkit/synth/frame.hpp"

namespace hopkit {

struct RewardConfig {
  double lambda_p = 20.0;
  double lambda_r = 20.0;
  double lambda_p_regrasp = 200.0;
  double lambda_r_regrasp = 200.0;
  double lambda_wp = 20.0;
  double lambda_wr = 20.0;
  double lambda_op = 50.0;
  double lambda_or = 50.0;
  double lambda_interact = 20.0;  // base value before distance scaling
  double lambda_contact = 5.0;
  // Interaction weight grows linearly from base (d >= d_far) to
  // base * (1 + gain) (d <= d_near).
  double interact_gain = 4.0;
  double interact_d_near = 0.02;
  double interact_d_far = 0.20;

  void validate() const;
};

enum class Term : std::size_t { p, r, wp, wr, op, or_, interact, contact };
inline constexpr std::size_t kTermCount = 8;
std::string_view term_name(Term t);

struct FrameReward {
  double total = 1.0;
  std::array<double, kTermCount> components{1, 1, 1, 1, 1, 1, 1, 1};
  std::array<double, kTermCount> errors{};

  double component(Term t) const { return components[static_cast<std::size_t>(t)]; }
};

// exp(-lambda * error)
double sub_reward(double error, double lambda);

double dynamic_interact_lambda(double distance, const RewardConfig& cfg);

// Scores `rollout` against `reference`. The phase of the reference frame
// selects the Regrasp weights. Object terms are skipped (left at 1) when
// the reference has no object channel; the interaction term is skipped
// when there are no object keypoints.
FrameReward frame_reward(const Frame& rollout, const Frame& reference, const RewardConfig& cfg);

double trajectory_mean_reward(const Trajectory& rollout, const Trajectory& reference,
                              const RewardConfig& cfg);

struct SuccessThresholds {
  double position = 0.10;           // m
  double angle = M_PI / 4.0;        // rad
};

struct TrackingMetrics {
  double e_op = 0.0;  // cm
  double e_or = 0.0;  // deg
  double e_h = 0.0;   // cm
  double sr = 1.0;
};

// Object errors average over frames that carry an object; a frame without
// an object channel counts as a success.
TrackingMetrics tracking_metrics(const Trajectory& rollout, const Trajectory& reference,
                                 const SuccessThresholds& th = {});

}  // namespace hopkit
