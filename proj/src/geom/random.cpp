#include "hopkit/geom/random.hpp"

#include <cmath>
#include <stdexcept>

namespace hopkit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint32_t stream,
                          std::uint64_t index) {
  const std::uint64_t counter =
      (static_cast<std::uint64_t>(stream) << 32) + index;
  return splitmix64(splitmix64(root) ^ splitmix64(counter));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index on empty range");
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

UnitQuaternion Rng::rotation() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double u3 = uniform();
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return UnitQuaternion::from_wxyz(a * std::sin(2.0 * M_PI * u2),
                                   a * std::cos(2.0 * M_PI * u2),
                                   b * std::sin(2.0 * M_PI * u3),
                                   b * std::cos(2.0 * M_PI * u3));
}

Vec3 Rng::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Vec3 Rng::in_box(const Vec3& lo, const Vec3& hi) {
  const double x = uniform(lo.x(), hi.x());
  const double y = uniform(lo.y(), hi.y());
  const double z = uniform(lo.z(), hi.z());
  return {x, y, z};
}

Vec3 sample_in_cone(const Vec3& apex, const Vec3& axis, double half_angle,
                    double r_min, double r_max, Rng& rng) {
  if (!(half_angle > 0.0) || half_angle > M_PI / 2 + 1e-12) {
    throw std::invalid_argument("cone half angle must be in (0, pi/2]");
  }
  if (!(r_min > 0.0) || r_min > r_max) {
    throw std::invalid_argument("cone radial range must satisfy 0 < r_min <= r_max");
  }
  const double n = axis.norm();
  if (!std::isfinite(n) || n == 0.0) {
    throw std::invalid_argument("cone axis must be a finite non-zero vector");
  }
  const Vec3 a = axis / n;
  // Orthonormal frame around the axis.
  const Vec3 helper = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = a.cross(helper).normalized();
  const Vec3 e2 = a.cross(e1);

  const double cos_min = std::cos(half_angle);
  const double cos_t = rng.uniform(cos_min, 1.0);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  const double r3 = rng.uniform(r_min * r_min * r_min, r_max * r_max * r_max);
  const double r = r_min == r_max ? r_min : std::cbrt(r3);

  const Vec3 dir = cos_t * a + sin_t * (std::cos(phi) * e1 + std::sin(phi) * e2);
  return apex + r * dir;
}

}  // namespace hopkit
