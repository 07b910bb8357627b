#pragma once

// Reduction kernels behind every mean and mass computation.
//
// The reference is a four-lane blocked reduction: within a leaf block element i
// accumulates into lane i % 4, lanes combine as (l0 + l1) + (l2 + l3), and leaves
// combine pairwise. The SIMD variants execute the same operation sequence, so
// every variant is bit-identical to the scalar one.

#include <cstddef>
#include <span>

namespace qamlab::kernels {

enum class SimdLevel { scalar, avx2, neon };

const char* to_string(SimdLevel level) noexcept;

/// Leaf size of the pairwise recursion.
inline constexpr std::size_t kLeafSize = 64;

/// Best level this CPU supports, unless QAMLAB_SIMD=scalar forces the reference.
SimdLevel active_level() noexcept;
/// Whether `level` was compiled in and the CPU supports it.
bool level_available(SimdLevel level) noexcept;

/// Σ w[i] * v[i]. Spans must have equal length.
double weighted_sum(std::span<const double> w, std::span<const double> v) noexcept;
double sum(std::span<const double> v) noexcept;

/// Same reductions forced to a specific level; unavailable levels fall back to scalar.
double weighted_sum(SimdLevel level, std::span<const double> w, std::span<const double> v) noexcept;
double sum(SimdLevel level, std::span<const double> v) noexcept;

namespace detail {
double weighted_leaf_scalar(const double* w, const double* v, std::size_t n) noexcept;
double sum_leaf_scalar(const double* v, std::size_t n) noexcept;
#if defined(QAMLAB_HAVE_AVX2)
double weighted_leaf_avx2(const double* w, const double* v, std::size_t n) noexcept;
double sum_leaf_avx2(const double* v, std::size_t n) noexcept;
#endif
#if defined(QAMLAB_HAVE_NEON)
double weighted_leaf_neon(const double* w, const double* v, std::size_t n) noexcept;
double sum_leaf_neon(const double* v, std::size_t n) noexcept;
#endif
}  // namespace detail

}  // namespace qamlab::kernels
