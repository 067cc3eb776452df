#if defined(HOPKIT_HAVE_AVX2_TU) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "hopkit/simd/kernels.hpp"

namespace hopkit::simd::avx2 {
namespace {

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

// Lane offsets of x, y, z for four consecutive packed points.
const __m256i kStride3 = _mm256_setr_epi64x(0, 3, 6, 9);

inline __m256d gather(const double* base, std::size_t component) {
  return _mm256_i64gather_pd(base + component, kStride3, 8);
}

double min_z(const double* xyz, std::size_t n) {
  __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_min_pd(m, gather(xyz + 3 * i, 2));
  double r = hmin(m);
  for (; i < n; ++i) r = std::min(r, xyz[3 * i + 2]);
  return r;
}

// Vectorized across planes; per-plane arithmetic matches the scalar kernel
// operation for operation, so results are bit-identical.
void plane_max(const double* xyz, std::size_t n, const PlaneSet& planes, double* out) {
  const std::size_t np = planes.padded();
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d px = _mm256_set1_pd(xyz[3 * i]);
    const __m256d py = _mm256_set1_pd(xyz[3 * i + 1]);
    const __m256d pz = _mm256_set1_pd(xyz[3 * i + 2]);
    __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    for (std::size_t f = 0; f < np; f += 4) {
      const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(&planes.nx[f]), px);
      const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(&planes.ny[f]), py);
      const __m256d c = _mm256_mul_pd(_mm256_loadu_pd(&planes.nz[f]), pz);
      const __m256d v =
          _mm256_sub_pd(_mm256_add_pd(_mm256_add_pd(a, b), c), _mm256_loadu_pd(&planes.d[f]));
      m = _mm256_max_pd(m, v);
    }
    out[i] = hmax(m);
  }
}

double mean_distance(const double* a, const double* b, std::size_t n) {
  if (n == 0) return 0.0;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* pa = a + 3 * i;
    const double* pb = b + 3 * i;
    const __m256d dx = _mm256_sub_pd(gather(pa, 0), gather(pb, 0));
    const __m256d dy = _mm256_sub_pd(gather(pa, 1), gather(pb, 1));
    const __m256d dz = _mm256_sub_pd(gather(pa, 2), gather(pb, 2));
    const __m256d sq = _mm256_fmadd_pd(dz, dz, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx)));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
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
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    const __m256d ax = _mm256_set1_pd(a[3 * i]);
    const __m256d ay = _mm256_set1_pd(a[3 * i + 1]);
    const __m256d az = _mm256_set1_pd(a[3 * i + 2]);
    std::size_t j = 0;
    for (; j + 4 <= nb; j += 4) {
      const double* pb = b + 3 * j;
      const __m256d dx = _mm256_sub_pd(ax, gather(pb, 0));
      const __m256d dy = _mm256_sub_pd(ay, gather(pb, 1));
      const __m256d dz = _mm256_sub_pd(az, gather(pb, 2));
      const __m256d sq =
          _mm256_fmadd_pd(dz, dz, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx)));
      acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
    }
    for (; j < nb; ++j) {
      const double dx = a[3 * i] - b[3 * j];
      const double dy = a[3 * i + 1] - b[3 * j + 1];
      const double dz = a[3 * i + 2] - b[3 * j + 2];
      tail += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
  }
  return (hsum(acc) + tail) / (static_cast<double>(na) * static_cast<double>(nb));
}

double min_value(const double* x, std::size_t n) {
  __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(x + i));
  double r = hmin(m);
  for (; i < n; ++i) r = std::min(r, x[i]);
  return r;
}

// exp(y) for y <= 0: y = k ln2 + r with |r| <= ln2/2, degree-13 Taylor
// polynomial for exp(r), then scaling by 2^k split in two factors so
// subnormal results stay correct. y < -745.2 flushes to zero.
inline __m256d exp_nonpositive(__m256d y) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d lowest = _mm256_set1_pd(-745.2);

  const __m256d underflow = _mm256_cmp_pd(y, lowest, _CMP_LT_OQ);
  y = _mm256_max_pd(y, lowest);
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, y);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double kInvFact[] = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800,
      1.0 / 479001600,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(kInvFact[13]);
  for (int d = 12; d >= 0; --d) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[d]));

  // 2^k = 2^k1 * 2^k2 with k1 = trunc(k / 2), both halves in normal range.
  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m128i k1 = _mm_srai_epi32(ki, 1);
  const __m128i k2 = _mm_sub_epi32(ki, k1);
  auto pow2 = [](__m128i e) {
    const __m256i wide = _mm256_cvtepi32_epi64(e);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(wide, _mm256_set1_epi64x(1023)), 52);
    return _mm256_castsi256_pd(bits);
  };
  const __m256d result = _mm256_mul_pd(_mm256_mul_pd(p, pow2(k1)), pow2(k2));
  return _mm256_andnot_pd(underflow, result);
}

double exp_shifted(const double* x, std::size_t n, double scale, double shift, double* out) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vshift = _mm256_set1_pd(shift);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_mul_pd(vs, _mm256_sub_pd(_mm256_loadu_pd(x + i), vshift));
    const __m256d v = exp_nonpositive(y);
    _mm256_storeu_pd(out + i, v);
    // Lane-wise Neumaier step.
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d big_sum =
        _mm256_cmp_pd(_mm256_andnot_pd(sign, sum), _mm256_andnot_pd(sign, v), _CMP_GE_OQ);
    const __m256d c_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d c_v = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c_v, c_sum, big_sum));
    sum = t;
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, sum);
  _mm256_store_pd(c, comp);
  double total = 0.0;
  double tc = 0.0;
  auto add = [&](double v) {
    const double t = total + v;
    tc += std::abs(total) >= std::abs(v) ? (total - t) + v : (v - t) + total;
    total = t;
  };
  for (int l = 0; l < 4; ++l) add(s[l]);
  for (; i < n; ++i) {
    const double v = std::exp(scale * (x[i] - shift));
    out[i] = v;
    add(v);
  }
  return total + (tc + ((c[0] + c[1]) + (c[2] + c[3])));
}

void divide(double* x, std::size_t n, double denom) {
  const __m256d d = _mm256_set1_pd(denom);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_loadu_pd(x + i), d));
  for (; i < n; ++i) x[i] /= denom;
}

}  // namespace

const KernelTable table{Isa::avx2, min_z, plane_max, mean_distance,
                        mean_pairwise_distance, min_value, exp_shifted, divide};

}  // namespace hopkit::simd::avx2

#endif
