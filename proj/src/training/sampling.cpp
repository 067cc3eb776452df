#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hopkit/simd/kernels.hpp"
#include "hopkit/training/training.hpp"

namespace hopkit {

std::vector<double> sampling_probabilities(std::span<const double> r, double lambda_s) {
  if (r.empty()) throw std::invalid_argument("sampling needs at least one trajectory");
  if (!(lambda_s >= 0.0) || !std::isfinite(lambda_s)) {
    throw std::invalid_argument("lambda_s must be finite and >= 0");
  }
  for (double v : r) {
    if (!std::isfinite(v)) throw std::invalid_argument("mean rewards must be finite");
  }
  const simd::KernelTable& k = simd::kernels();
  const double r_min = k.min_value(r.data(), r.size());
  std::vector<double> p(r.size());
  const double sum = k.exp_shifted(r.data(), r.size(), -lambda_s, r_min, p.data());
  k.divide(p.data(), p.size(), sum);
  return p;
}

}  // namespace hopkit
