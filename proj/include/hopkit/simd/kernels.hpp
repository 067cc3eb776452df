#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2
// variant; the variant is picked once at startup from the CPU features
// (override with HOPKIT_SIMD=scalar). Point arrays are packed xyz triples.

#include <cstddef>
#include <span>
#include <vector>

#include "hopkit/geom/types.hpp"

namespace hopkit::simd {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

// Planes n . x - d in structure-of-arrays form, padded to a multiple of 4
// by repeating the last plane.
struct PlaneSet {
  std::vector<double> nx, ny, nz, d;
  std::size_t count = 0;  // planes before padding

  void add(const Vec3& normal, double offset);
  void finalize();
  std::size_t padded() const { return nx.size(); }
};

struct KernelTable {
  Isa isa;
  // min over z components
  double (*min_z)(const double* xyz, std::size_t n);
  // out[i] = max_f (n_f . p_i - d_f)
  void (*plane_max)(const double* xyz, std::size_t n, const PlaneSet& planes,
                    double* out);
  // mean_i |a_i - b_i|
  double (*mean_distance)(const double* a, const double* b, std::size_t n);
  // mean_{i,j} |a_i - b_j|
  double (*mean_pairwise_distance)(const double* a, std::size_t na,
                                   const double* b, std::size_t nb);
  double (*min_value)(const double* x, std::size_t n);
  // out[i] = exp(scale * (x[i] - shift)); returns the compensated sum.
  // Arguments must be <= 0 (scale and shift are chosen by the caller).
  double (*exp_shifted)(const double* x, std::size_t n, double scale,
                        double shift, double* out);
  // x[i] /= denom
  void (*divide)(double* x, std::size_t n, double denom);
};

bool isa_supported(Isa isa);
const KernelTable& kernels(Isa isa);
// The table chosen for this process.
const KernelTable& kernels();

namespace scalar {
extern const KernelTable table;
}
#if defined(HOPKIT_HAVE_AVX2_TU)
namespace avx2 {
extern const KernelTable table;
}
#endif

// Typed entry points used by the rest of the library.
double min_z(std::span<const Vec3> points);
std::vector<double> plane_max(std::span<const Vec3> points, const PlaneSet& planes);
double mean_distance(std::span<const Vec3> a, std::span<const Vec3> b);
double mean_pairwise_distance(std::span<const Vec3> a, std::span<const Vec3> b);

inline const double* raw(std::span<const Vec3> p) {
  return p.empty() ? nullptr : p.data()->data();
}

}  // namespace hopkit::simd
