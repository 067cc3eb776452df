#include "hopkit/geom/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hopkit {

Vec3 bezier_point(const Vec3& p0, const Vec3& c1, const Vec3& c2,
                  const Vec3& p3, double u) {
  if (u <= 0.0) return p0;
  if (u >= 1.0) return p3;
  const double v = 1.0 - u;
  return (v * v * v) * p0 + (3.0 * v * v * u) * c1 + (3.0 * v * u * u) * c2 +
         (u * u * u) * p3;
}

PointList cubic_bezier(std::span<const Vec3> anchors, double tangent_scale,
                       int samples_per_segment) {
  if (anchors.size() < 2) {
    throw std::invalid_argument("cubic_bezier needs at least two anchors");
  }
  if (samples_per_segment < 2) {
    throw std::invalid_argument("cubic_bezier needs >= 2 samples per segment");
  }
  for (const Vec3& a : anchors) {
    if (!a.allFinite()) {
      throw std::invalid_argument("cubic_bezier anchor is not finite");
    }
  }

  const auto n = static_cast<std::ptrdiff_t>(anchors.size());
  auto at = [&](std::ptrdiff_t i) -> const Vec3& {
    return anchors[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, n - 1))];
  };

  PointList out;
  out.reserve(static_cast<std::size_t>((n - 1) * (samples_per_segment - 1) + 1));
  out.push_back(anchors.front());
  for (std::ptrdiff_t i = 0; i + 1 < n; ++i) {
    const Vec3& p0 = at(i);
    const Vec3& p3 = at(i + 1);
    const Vec3 c1 = p0 + tangent_scale * (at(i + 1) - at(i - 1));
    const Vec3 c2 = p3 - tangent_scale * (at(i + 2) - at(i));
    for (int k = 1; k < samples_per_segment; ++k) {
      const double u = static_cast<double>(k) / (samples_per_segment - 1);
      out.push_back(bezier_point(p0, c1, c2, p3, u));
    }
  }
  return out;
}

std::vector<Pose> parabola(const Vec3& p_start, const Vec3& p_end,
                           double flight_time, double gravity, double fps,
                           const UnitQuaternion& q_start,
                           const UnitQuaternion& q_end) {
  if (!(flight_time > 0.0) || !(fps > 0.0)) {
    throw std::invalid_argument("parabola needs positive flight time and fps");
  }
  const long steps = std::lround(flight_time * fps);
  if (steps < 1) {
    throw std::invalid_argument("parabola flight shorter than one frame");
  }
  const Vec3 g(0.0, 0.0, -gravity);
  const Vec3 v0 = (p_end - p_start) / flight_time - 0.5 * g * flight_time;

  std::vector<Pose> out;
  out.reserve(static_cast<std::size_t>(steps + 1));
  for (long i = 0; i <= steps; ++i) {
    const double t = flight_time * static_cast<double>(i) / steps;
    const double u = static_cast<double>(i) / steps;
    Pose p;
    p.position = i == steps ? p_end : p_start + v0 * t + 0.5 * g * t * t;
    p.orientation = slerp(q_start, q_end, u);
    out.push_back(p);
  }
  return out;
}

}  // namespace hopkit
