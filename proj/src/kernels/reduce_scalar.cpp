// Reference leaf reductions. Element i of a leaf accumulates into lane i % 4.

#include "qamlab/kernels.hpp"

namespace qamlab::kernels::detail {

double weighted_leaf_scalar(const double* w, const double* v, std::size_t n) noexcept {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lane[0] += w[i] * v[i];
    lane[1] += w[i + 1] * v[i + 1];
    lane[2] += w[i + 2] * v[i + 2];
    lane[3] += w[i + 3] * v[i + 3];
  }
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += w[i] * v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_leaf_scalar(const double* v, std::size_t n) noexcept {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lane[0] += v[i];
    lane[1] += v[i + 1];
    lane[2] += v[i + 2];
    lane[3] += v[i + 3];
  }
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace qamlab::kernels::detail
