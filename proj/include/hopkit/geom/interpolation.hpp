#pragma once

#include <span>
#include <vector>

#include "hopkit/geom/pose.hpp"

namespace hopkit {

// Piecewise cubic Bezier through `anchors`. Each consecutive pair (P_i,
// P_i+1) gets inner control points
//   P_i + s * (P_i+1 - P_i-1)   and   P_i+1 - s * (P_i+2 - P_i)
// with neighbor indices clamped at the ends. Every segment is sampled at
// `samples_per_segment` uniform parameters including both endpoints; the
// repeated first sample of each later segment is dropped. Anchors are
// reproduced exactly.
PointList cubic_bezier(std::span<const Vec3> anchors, double tangent_scale,
                       int samples_per_segment);

// Point on one cubic segment (Bernstein form). Endpoints exact.
Vec3 bezier_point(const Vec3& p0, const Vec3& c1, const Vec3& c2,
                  const Vec3& p3, double u);

// Ballistic flight from p_start to p_end under gravity along -z, sampled
// at `fps` from t = 0 to t = flight_time. Orientation is slerped from
// q_start to q_end over the same frames. Frame count is
// round(flight_time * fps) + 1; the last frame equals p_end exactly.
std::vector<Pose> parabola(const Vec3& p_start, const Vec3& p_end,
                           double flight_time, double gravity, double fps,
                           const UnitQuaternion& q_start = {},
                           const UnitQuaternion& q_end = {});

}  // namespace hopkit
