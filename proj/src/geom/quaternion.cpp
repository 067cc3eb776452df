#include "hopkit/geom/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hopkit {

UnitQuaternion UnitQuaternion::from_wxyz(double w, double x, double y,
                                         double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(n) || n == 0.0) {
    throw std::invalid_argument("quaternion has zero or non-finite norm");
  }
  if (n == 1.0) return raw(w, x, y, z);
  return raw(w / n, x / n, y / n, z / n);
}

UnitQuaternion UnitQuaternion::from_stored(double w, double x, double y,
                                           double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (std::isfinite(n) && std::abs(n - 1.0) <= 1e-12) return raw(w, x, y, z);
  return from_wxyz(w, x, y, z);
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis,
                                               double angle) {
  const double n = axis.norm();
  if (!std::isfinite(n) || n == 0.0 || !std::isfinite(angle)) {
    throw std::invalid_argument("axis-angle needs a finite non-zero axis");
  }
  const Vec3 a = axis / n;
  const double s = std::sin(0.5 * angle);
  return from_wxyz(std::cos(0.5 * angle), a.x() * s, a.y() * s, a.z() * s);
}

UnitQuaternion UnitQuaternion::from_matrix(const Mat3& m) {
  const Eigen::Quaterniond q(m);
  return from_wxyz(q.w(), q.x(), q.y(), q.z());
}

UnitQuaternion UnitQuaternion::between(const Vec3& from, const Vec3& to) {
  const Vec3 a = from.normalized();
  const Vec3 b = to.normalized();
  const double c = a.dot(b);
  if (c < -1.0 + 1e-12) {
    Vec3 axis = a.cross(Vec3::UnitX());
    if (axis.norm() < 1e-6) axis = a.cross(Vec3::UnitY());
    return from_axis_angle(axis, M_PI);
  }
  const Vec3 v = a.cross(b);
  return from_wxyz(1.0 + c, v.x(), v.y(), v.z());
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& o) const {
  // Paired terms cancel exactly in conjugate(q) * q.
  return raw((w_ * o.w_ - x_ * o.x_) - (y_ * o.y_ + z_ * o.z_),
             (w_ * o.x_ + x_ * o.w_) + (y_ * o.z_ - z_ * o.y_),
             (w_ * o.y_ + y_ * o.w_) + (z_ * o.x_ - x_ * o.z_),
             (w_ * o.z_ + z_ * o.w_) + (x_ * o.y_ - y_ * o.x_));
}

Vec3 UnitQuaternion::rotate(const Vec3& v) const {
  // v + 2w(u x v) + 2u x (u x v)
  const Vec3 u(x_, y_, z_);
  const Vec3 t = 2.0 * u.cross(v);
  return v + w_ * t + u.cross(t);
}

Mat3 UnitQuaternion::matrix() const {
  return Eigen::Quaterniond(w_, x_, y_, z_).toRotationMatrix();
}

double UnitQuaternion::angle() const {
  return 2.0 * std::atan2(vec().norm(), std::abs(w_));
}

double UnitQuaternion::angle_to(const UnitQuaternion& o) const {
  return (conjugate() * o).angle();
}

Vec3 UnitQuaternion::log() const {
  const double s = vec().norm();
  if (s == 0.0) return Vec3::Zero();
  const double sign = w_ < 0.0 ? -1.0 : 1.0;
  return sign * vec() / s * (2.0 * std::atan2(s, std::abs(w_)));
}

UnitQuaternion UnitQuaternion::exp(const Vec3& rotation_vector) {
  const double angle = rotation_vector.norm();
  if (angle == 0.0) return identity();
  return from_axis_angle(rotation_vector, angle);
}

double UnitQuaternion::norm() const {
  return std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_);
}

bool same_rotation(const UnitQuaternion& a, const UnitQuaternion& b,
                   double tol) {
  return a.angle_to(b) <= tol;
}

UnitQuaternion slerp(const UnitQuaternion& q0, const UnitQuaternion& q1,
                     double u) {
  // Shortest arc: the q1 representative on q0's hemisphere. Inputs with
  // dot == -1 are the same rotation and come out as q0 via the near branch.
  double d = q0.dot(q1);
  const UnitQuaternion target = d < 0.0 ? q1.negated() : q1;
  d = std::min(std::abs(d), 1.0);
  if (u <= 0.0) return q0;
  if (u >= 1.0) return target;

  double a;
  double b;
  if (d > 1.0 - 1e-12) {
    a = 1.0 - u;
    b = u;
  } else {
    const double theta = std::acos(d);
    const double s = std::sin(theta);
    a = std::sin((1.0 - u) * theta) / s;
    b = std::sin(u * theta) / s;
  }
  return UnitQuaternion::from_wxyz(a * q0.w() + b * target.w(),
                                   a * q0.x() + b * target.x(),
                                   a * q0.y() + b * target.y(),
                                   a * q0.z() + b * target.z());
}

}  // namespace hopkit
