#pragma once

#include <limits>
#include <string>

namespace qamlab {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  /// Points closer than this to a finite endpoint are treated as outside.
  static constexpr double kEndpointMargin = 1e-300;

  Interval() = default;
  Interval(double lo_, double hi_);

  static Interval positive_reals() { return {0.0, std::numeric_limits<double>::infinity()}; }
  static Interval reals() { return {}; }

  bool contains(double x) const noexcept;
  bool lo_finite() const noexcept { return lo != -std::numeric_limits<double>::infinity(); }
  bool hi_finite() const noexcept { return hi != std::numeric_limits<double>::infinity(); }
  bool is_positive_reals() const noexcept { return lo == 0.0 && !hi_finite(); }

  /// Innermost-but-admissible points next to each end, used when bracketing.
  double inner_lo() const noexcept;
  double inner_hi() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection; throws ParameterError when empty.
Interval intersect(const Interval& a, const Interval& b);

}  // namespace qamlab
