#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <vector>

namespace hopkit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using PointList = std::vector<Vec3>;

static_assert(sizeof(Vec3) == 3 * sizeof(double),
              "point lists are read as packed xyz triples by the kernels");

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace hopkit
