#pragma once

#include <cstdint>
#include <random>

#include "hopkit/geom/pose.hpp"

namespace hopkit {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of item `index` in stream `stream` under `root`:
//   splitmix64(splitmix64(root) ^ splitmix64((stream << 32) + index))
std::uint64_t derive_seed(std::uint64_t root, std::uint32_t stream,
                          std::uint64_t index);

// Deterministic generator. Distribution math is done here rather than with
// <random> distributions so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

  // Haar-uniform rotation (Shoemake's subgroup method).
  UnitQuaternion rotation();
  Vec3 unit_vector();
  Vec3 in_box(const Vec3& lo, const Vec3& hi);

 private:
  std::mt19937_64 engine_;
};

// Point in the cone with apex `apex`, axis `axis`, given half angle and
// radial shell [r_min, r_max]; uniform in solid angle and shell volume.
Vec3 sample_in_cone(const Vec3& apex, const Vec3& axis, double half_angle,
                    double r_min, double r_max, Rng& rng);

}  // namespace hopkit
