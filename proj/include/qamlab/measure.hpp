#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qamlab/interval.hpp"

namespace qamlab {

struct Admissibility {
  bool non_degenerate = false;
  /// Some proper subset A has 0 < mass(A) < 1 < total mass.
  bool thm1_admissible = false;
  bool probability = false;
};

/// Finite measure space given by positive atom weights.
class MeasureSpace {
 public:
  static constexpr std::size_t kMaxEnumeratedAtoms = 20;
  static constexpr double kProbabilityTolerance = 1e-12;

  explicit MeasureSpace(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double total_mass() const noexcept { return total_; }

  /// Mass of the atoms listed in `mask`. Throws std::out_of_range on a bad index.
  double subset_mass(std::span<const std::size_t> mask) const;
  double subset_mass(std::uint32_t bits) const;

  Admissibility admissibility() const;
  /// Bitmask of a set A with 0 < mass(A) < 1 < total mass, if one exists.
  std::optional<std::uint32_t> thm1_split() const;

 private:
  std::vector<double> weights_;
  double total_;
};

/// h : X × Y → I on atoms, row i ↔ atom i of X, column j ↔ atom j of Y.
class SimpleFunction {
 public:
  SimpleFunction(std::size_t rows, std::size_t cols, std::vector<double> values, Interval domain);
  static SimpleFunction from_rows(const std::vector<std::vector<double>>& rows, Interval domain);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> values() const noexcept { return values_; }
  const Interval& domain() const noexcept { return domain_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  Interval domain_;
};

/// Sampling box for test functions: [lo, hi] strictly inside a domain.
struct Box {
  double lo;
  double hi;
};

/// A box of about six decades placed inside `domain`.
Box default_box(const Interval& domain);

/// Deterministic m×n grid; entries log-uniform on the box when box.lo > 0, uniform otherwise.
SimpleFunction random_simple_function(const Interval& domain, std::size_t m, std::size_t n,
                                      std::uint64_t seed, Box box);

}  // namespace qamlab
