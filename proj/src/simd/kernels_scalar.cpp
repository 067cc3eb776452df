#include <algorithm>
#include <cmath>
#include <limits>

#include "hopkit/simd/kernels.hpp"

namespace hopkit::simd::scalar {
namespace {

double min_z(const double* xyz, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, xyz[3 * i + 2]);
  return m;
}

void plane_max(const double* xyz, std::size_t n, const PlaneSet& planes, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double px = xyz[3 * i];
    const double py = xyz[3 * i + 1];
    const double pz = xyz[3 * i + 2];
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < planes.count; ++f) {
      const double v =
          ((planes.nx[f] * px + planes.ny[f] * py) + planes.nz[f] * pz) - planes.d[f];
      m = std::max(m, v);
    }
    out[i] = m;
  }
}

double mean_distance(const double* a, const double* b, std::size_t n) {
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = a[3 * i] - b[3 * i];
    const double dy = a[3 * i + 1] - b[3 * i + 1];
    const double dz = a[3 * i + 2] - b[3 * i + 2];
    sum += std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return sum / static_cast<double>(n);
}

double mean_pairwise_distance(const double* a, std::size_t na, const double* b,
                              std::size_t nb) {
  if (na == 0 || nb == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const double dx = a[3 * i] - b[3 * j];
      const double dy = a[3 * i + 1] - b[3 * j + 1];
      const double dz = a[3 * i + 2] - b[3 * j + 2];
      sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
  }
  return sum / (static_cast<double>(na) * static_cast<double>(nb));
}

double min_value(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

// Neumaier-compensated running sum.
double exp_shifted(const double* x, std::size_t n, double scale, double shift,
                   double* out) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::exp(scale * (x[i] - shift));
    out[i] = v;
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void divide(double* x, std::size_t n, double denom) {
  for (std::size_t i = 0; i < n; ++i) x[i] /= denom;
}

}  // namespace

const KernelTable table{Isa::scalar, min_z, plane_max, mean_distance,
                        mean_pairwise_distance, min_value, exp_shifted, divide};

}  // namespace hopkit::simd::scalar
