#include <cmath>
#include <stdexcept>

#include "hopkit/reward/reward.hpp"
#include "hopkit/simd/kernels.hpp"

namespace hopkit {

TrackingMetrics tracking_metrics(const Trajectory& roll, const Trajectory& ref,
                                 const SuccessThresholds& th) {
  if (roll.frames.size() != ref.frames.size()) {
    throw std::invalid_argument("trajectory lengths differ: " + std::to_string(roll.frames.size()) +
                                " vs " + std::to_string(ref.frames.size()));
  }
  TrackingMetrics m;
  if (ref.frames.empty()) return m;
  double op = 0.0, orient = 0.0, hand = 0.0;
  std::size_t with_object = 0, hand_frames = 0, successes = 0;
  for (std::size_t t = 0; t < ref.frames.size(); ++t) {
    const Frame& a = roll.frames[t];
    const Frame& b = ref.frames[t];
    if (a.joints.size() != b.joints.size()) throw std::invalid_argument("hand keypoint counts differ");
    if (!b.joints.empty()) {
      hand += simd::mean_distance(a.joints, b.joints);
      ++hand_frames;
    }
    if (b.object) {
      if (!a.object) throw std::invalid_argument("rollout lacks an object channel");
      const double dp = position_distance(*a.object, *b.object);
      const double da = rotation_distance(*a.object, *b.object);
      op += dp;
      orient += da;
      ++with_object;
      successes += dp < th.position && da < th.angle;
    } else {
      ++successes;
    }
  }
  if (with_object > 0) {
    m.e_op = 100.0 * op / static_cast<double>(with_object);
    m.e_or = orient / static_cast<double>(with_object) * 180.0 / M_PI;
  }
  if (hand_frames > 0) m.e_h = 100.0 * hand / static_cast<double>(hand_frames);
  m.sr = static_cast<double>(successes) / static_cast<double>(ref.frames.size());
  return m;
}

}  // namespace hopkit
