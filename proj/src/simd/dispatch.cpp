#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "hopkit/simd/kernels.hpp"

namespace hopkit::simd {

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void PlaneSet::add(const Vec3& normal, double offset) {
  nx.push_back(normal.x());
  ny.push_back(normal.y());
  nz.push_back(normal.z());
  d.push_back(offset);
  count = nx.size();
}

void PlaneSet::finalize() {
  if (count == 0) return;
  nx.resize(count);
  ny.resize(count);
  nz.resize(count);
  d.resize(count);
  while (nx.size() % 4 != 0) {
    nx.push_back(nx.back());
    ny.push_back(ny.back());
    nz.push_back(nz.back());
    d.push_back(d.back());
  }
}

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(HOPKIT_HAVE_AVX2_TU)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& kernels(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::runtime_error(std::string("SIMD variant not supported: ") + isa_name(isa));
  }
#if defined(HOPKIT_HAVE_AVX2_TU)
  if (isa == Isa::avx2) return avx2::table;
#endif
  return scalar::table;
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("HOPKIT_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar::table;
  if (isa_supported(Isa::avx2)) return kernels(Isa::avx2);
  return scalar::table;
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& active = select();
  return active;
}

double min_z(std::span<const Vec3> points) {
  return kernels().min_z(raw(points), points.size());
}

std::vector<double> plane_max(std::span<const Vec3> points, const PlaneSet& planes) {
  if (planes.count == 0) throw std::invalid_argument("plane_max: empty plane set");
  std::vector<double> out(points.size());
  kernels().plane_max(raw(points), points.size(), planes, out.data());
  return out;
}

double mean_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.size() != b.size()) throw std::invalid_argument("mean_distance: size mismatch");
  if (a.empty()) return 0.0;
  return kernels().mean_distance(raw(a), raw(b), a.size());
}

double mean_pairwise_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.empty() || b.empty()) return 0.0;
  return kernels().mean_pairwise_distance(raw(a), a.size(), raw(b), b.size());
}

}  // namespace hopkit::simd
