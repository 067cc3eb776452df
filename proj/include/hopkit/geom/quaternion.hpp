#pragma once

#include "hopkit/geom/types.hpp"

namespace hopkit {

// Rotation stored as a unit quaternion (w, x, y, z). Every constructor
// normalizes; q and -q describe the same rotation.
class UnitQuaternion {
 public:
  UnitQuaternion() = default;

  // Normalizes; throws std::invalid_argument on a zero or non-finite input.
  static UnitQuaternion from_wxyz(double w, double x, double y, double z);
  // Keeps the components verbatim when the norm is within 1e-12 of one
  // (stored data), normalizes otherwise.
  static UnitQuaternion from_stored(double w, double x, double y, double z);
  static UnitQuaternion identity() { return {}; }
  static UnitQuaternion from_axis_angle(const Vec3& axis, double angle);
  static UnitQuaternion from_matrix(const Mat3& m);
  // Shortest rotation taking direction `from` onto direction `to`. For
  // antiparallel inputs the half-turn axis is taken perpendicular to `from`
  // through x, falling back to y.
  static UnitQuaternion between(const Vec3& from, const Vec3& to);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Vec3 vec() const { return {x_, y_, z_}; }

  UnitQuaternion conjugate() const { return raw(w_, -x_, -y_, -z_); }
  UnitQuaternion inverse() const { return conjugate(); }
  UnitQuaternion negated() const { return raw(-w_, -x_, -y_, -z_); }

  UnitQuaternion operator*(const UnitQuaternion& o) const;
  Vec3 rotate(const Vec3& v) const;
  Mat3 matrix() const;

  double dot(const UnitQuaternion& o) const {
    return w_ * o.w_ + x_ * o.x_ + y_ * o.y_ + z_ * o.z_;
  }
  // Rotation angle of this^-1 * o, in [0, pi].
  double angle_to(const UnitQuaternion& o) const;
  // Rotation angle of this quaternion, in [0, pi].
  double angle() const;
  // Rotation vector (axis * angle) with angle in [0, pi].
  Vec3 log() const;
  static UnitQuaternion exp(const Vec3& rotation_vector);

  double norm() const;

  bool operator==(const UnitQuaternion& o) const = default;

 private:
  static UnitQuaternion raw(double w, double x, double y, double z) {
    UnitQuaternion q;
    q.w_ = w;
    q.x_ = x;
    q.y_ = y;
    q.z_ = z;
    return q;
  }

  double w_ = 1.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

// True when a and b are the same rotation (q ~ -q) within `tol` radians.
bool same_rotation(const UnitQuaternion& a, const UnitQuaternion& b,
                   double tol = 1e-9);

// Geodesic interpolation along the shorter arc. u == 0 returns q0 and
// u == 1 returns q1 (sign-adjusted to the q0 hemisphere) without rounding.
UnitQuaternion slerp(const UnitQuaternion& q0, const UnitQuaternion& q1,
                     double u);

}  // namespace hopkit
