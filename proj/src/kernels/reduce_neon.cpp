// NEON leaf reductions: two float64x2 registers hold lanes (0, 1) and (2, 3).

#include <arm_neon.h>

#include "qamlab/kernels.hpp"

namespace qamlab::kernels::detail {

double weighted_leaf_neon(const double* w, const double* v, std::size_t n) noexcept {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(w + i), vld1q_f64(v + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(w + i + 2), vld1q_f64(v + i + 2)));
  }
  double lane[4];
  vst1q_f64(lane, lo);
  vst1q_f64(lane + 2, hi);
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += w[i] * v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_leaf_neon(const double* v, std::size_t n) noexcept {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(v + i));
    hi = vaddq_f64(hi, vld1q_f64(v + i + 2));
  }
  double lane[4];
  vst1q_f64(lane, lo);
  vst1q_f64(lane + 2, hi);
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace qamlab::kernels::detail
