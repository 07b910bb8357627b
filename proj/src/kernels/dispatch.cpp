#include <cassert>
#include <cstdlib>
#include <cstring>

#include "qamlab/kernels.hpp"

namespace qamlab::kernels {

namespace {

using WeightedLeaf = double (*)(const double*, const double*, std::size_t) noexcept;
using SumLeaf = double (*)(const double*, std::size_t) noexcept;

bool cpu_supports(SimdLevel level) noexcept {
  switch (level) {
    case SimdLevel::scalar:
      return true;
    case SimdLevel::avx2:
#if defined(QAMLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case SimdLevel::neon:
#if defined(QAMLAB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

SimdLevel detect() noexcept {
  if (const char* env = std::getenv("QAMLAB_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return SimdLevel::scalar;
  }
  if (cpu_supports(SimdLevel::avx2)) return SimdLevel::avx2;
  if (cpu_supports(SimdLevel::neon)) return SimdLevel::neon;
  return SimdLevel::scalar;
}

WeightedLeaf weighted_leaf(SimdLevel level) noexcept {
  if (!cpu_supports(level)) return detail::weighted_leaf_scalar;
  switch (level) {
#if defined(QAMLAB_HAVE_AVX2)
    case SimdLevel::avx2:
      return detail::weighted_leaf_avx2;
#endif
#if defined(QAMLAB_HAVE_NEON)
    case SimdLevel::neon:
      return detail::weighted_leaf_neon;
#endif
    default:
      return detail::weighted_leaf_scalar;
  }
}

SumLeaf sum_leaf(SimdLevel level) noexcept {
  if (!cpu_supports(level)) return detail::sum_leaf_scalar;
  switch (level) {
#if defined(QAMLAB_HAVE_AVX2)
    case SimdLevel::avx2:
      return detail::sum_leaf_avx2;
#endif
#if defined(QAMLAB_HAVE_NEON)
    case SimdLevel::neon:
      return detail::sum_leaf_neon;
#endif
    default:
      return detail::sum_leaf_scalar;
  }
}

// Splits stay on lane boundaries so leaf layout is the same for every variant.
std::size_t split_point(std::size_t n) noexcept { return ((n / 2) + 3) & ~std::size_t{3}; }

double pairwise(WeightedLeaf leaf, const double* w, const double* v, std::size_t n) noexcept {
  if (n <= kLeafSize) return leaf(w, v, n);
  const std::size_t half = split_point(n);
  return pairwise(leaf, w, v, half) + pairwise(leaf, w + half, v + half, n - half);
}

double pairwise(SumLeaf leaf, const double* v, std::size_t n) noexcept {
  if (n <= kLeafSize) return leaf(v, n);
  const std::size_t half = split_point(n);
  return pairwise(leaf, v, half) + pairwise(leaf, v + half, n - half);
}

}  // namespace

const char* to_string(SimdLevel level) noexcept {
  switch (level) {
    case SimdLevel::scalar:
      return "scalar";
    case SimdLevel::avx2:
      return "avx2";
    case SimdLevel::neon:
      return "neon";
  }
  return "?";
}

SimdLevel active_level() noexcept {
  static const SimdLevel level = detect();
  return level;
}

bool level_available(SimdLevel level) noexcept { return cpu_supports(level); }

double weighted_sum(SimdLevel level, std::span<const double> w, std::span<const double> v) noexcept {
  assert(w.size() == v.size());
  return pairwise(weighted_leaf(level), w.data(), v.data(), v.size());
}

double sum(SimdLevel level, std::span<const double> v) noexcept {
  return pairwise(sum_leaf(level), v.data(), v.size());
}

double weighted_sum(std::span<const double> w, std::span<const double> v) noexcept {
  static const WeightedLeaf leaf = weighted_leaf(active_level());
  assert(w.size() == v.size());
  return pairwise(leaf, w.data(), v.data(), v.size());
}

double sum(std::span<const double> v) noexcept {
  static const SumLeaf leaf = sum_leaf(active_level());
  return pairwise(leaf, v.data(), v.size());
}

}  // namespace qamlab::kernels
