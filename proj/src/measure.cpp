#include "qamlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"
#include "qamlab/kernels.hpp"
#include "qamlab/rng.hpp"

namespace qamlab {

MeasureSpace::MeasureSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ParameterError("a measure space needs at least one atom");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParameterError("atom weights must be positive and finite, got " + format_short(w));
    }
  }
  total_ = kernels::sum(weights_);
}

double MeasureSpace::subset_mass(std::span<const std::size_t> mask) const {
  double s = 0.0;
  for (std::size_t i : mask) {
    if (i >= weights_.size()) {
      throw std::out_of_range("atom index " + std::to_string(i) + " out of range for " +
                              std::to_string(weights_.size()) + " atoms");
    }
    s += weights_[i];
  }
  return s;
}

double MeasureSpace::subset_mass(std::uint32_t bits) const {
  if (weights_.size() < 32 && (bits >> weights_.size()) != 0) {
    throw std::out_of_range("subset mask selects atoms beyond " + std::to_string(weights_.size()));
  }
  if (bits == (std::uint32_t{1} << weights_.size()) - 1 && weights_.size() < 32) return total_;
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size() && i < 32; ++i) {
    if (bits & (std::uint32_t{1} << i)) s += weights_[i];
  }
  return s;
}

std::optional<std::uint32_t> MeasureSpace::thm1_split() const {
  const std::size_t m = weights_.size();
  if (m > kMaxEnumeratedAtoms) {
    throw ParameterError("subset enumeration is capped at " + std::to_string(kMaxEnumeratedAtoms) +
                         " atoms, got " + std::to_string(m));
  }
  if (m < 2 || !(total_ > 1.0 + kProbabilityTolerance)) return std::nullopt;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  for (std::uint32_t bits = 1; bits < full; ++bits) {
    const double s = subset_mass(bits);
    if (s < 1.0 - kProbabilityTolerance) return bits;
  }
  return std::nullopt;
}

Admissibility MeasureSpace::admissibility() const {
  Admissibility a;
  a.non_degenerate = weights_.size() >= 2;
  a.probability = std::abs(total_ - 1.0) <= kProbabilityTolerance;
  a.thm1_admissible = thm1_split().has_value();
  return a;
}

SimpleFunction::SimpleFunction(std::size_t rows, std::size_t cols, std::vector<double> values,
                               Interval domain)
    : rows_(rows), cols_(cols), values_(std::move(values)), domain_(domain) {
  if (rows_ == 0 || cols_ == 0) throw ParameterError("a simple function needs at least one row and column");
  if (values_.size() != rows_ * cols_) {
    throw ParameterError("grid has " + std::to_string(values_.size()) + " values, expected " +
                         std::to_string(rows_ * cols_));
  }
  for (double v : values_) {
    if (!domain_.contains(v)) {
      throw DomainError("grid value " + format_short(v) + " is outside " + domain_.to_string(), v);
    }
  }
}

SimpleFunction SimpleFunction::from_rows(const std::vector<std::vector<double>>& rows, Interval domain) {
  if (rows.empty()) throw ParameterError("a simple function needs at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw ParameterError("grid rows have different lengths");
    values.insert(values.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(values), domain};
}

Box default_box(const Interval& domain) {
  if (domain.is_positive_reals()) return {1e-3, 1e3};
  if (!domain.lo_finite() && !domain.hi_finite()) return {-6.9, 6.9};
  if (!domain.hi_finite()) return {domain.lo + 1e-3, domain.lo + 1e3};
  if (!domain.lo_finite()) return {domain.hi - 1e3, domain.hi - 1e-3};
  const double w = domain.hi - domain.lo;
  return {domain.lo + w * 1e-3, domain.hi - w * 1e-3};
}

SimpleFunction random_simple_function(const Interval& domain, std::size_t m, std::size_t n,
                                      std::uint64_t seed, Box box) {
  if (m == 0 || n == 0) throw ParameterError("grid dimensions must be positive");
  if (!(box.lo <= box.hi) || !domain.contains(box.lo) || !domain.contains(box.hi)) {
    throw ParameterError("sampling box [" + format_short(box.lo) + ", " + format_short(box.hi) +
                         "] must lie inside " + domain.to_string());
  }
  Rng rng(seed);
  std::vector<double> values(m * n);
  for (double& v : values) {
    v = box.lo > 0.0 ? rng.log_uniform(box.lo, box.hi) : rng.uniform(box.lo, box.hi);
    v = std::clamp(v, box.lo, box.hi);
  }
  return {m, n, std::move(values), domain};
}

}  // namespace qamlab
