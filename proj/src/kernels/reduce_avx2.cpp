// AVX2 leaf reductions. Compiled with -mavx2 only (no FMA) so each lane performs the
// same multiply-then-add sequence as the scalar reference.

#include <immintrin.h>

#include "qamlab/kernels.hpp"

namespace qamlab::kernels::detail {

double weighted_leaf_avx2(const double* w, const double* v, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i));
    acc = _mm256_add_pd(acc, prod);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += w[i] * v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_leaf_avx2(const double* v, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace qamlab::kernels::detail
