#include "qamlab/interval.hpp"

#include <algorithm>
#include <cmath>

#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"

namespace qamlab {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw ParameterError("interval needs lo < hi, got (" + format_short(lo) + ", " +
                         format_short(hi) + ")");
  }
}

bool Interval::contains(double x) const noexcept {
  if (!std::isfinite(x)) return false;
  const bool above = !lo_finite() || (x - lo) > kEndpointMargin;
  const bool below = !hi_finite() || (hi - x) > kEndpointMargin;
  return above && below;
}

double Interval::inner_lo() const noexcept {
  if (!lo_finite()) return -std::numeric_limits<double>::max();
  double x = lo + std::max(2 * kEndpointMargin, std::abs(lo) * 4 * std::numeric_limits<double>::epsilon());
  return x;
}

double Interval::inner_hi() const noexcept {
  if (!hi_finite()) return std::numeric_limits<double>::max();
  return hi - std::max(2 * kEndpointMargin, std::abs(hi) * 4 * std::numeric_limits<double>::epsilon());
}

std::string Interval::to_string() const {
  return "(" + format_short(lo) + ", " + format_short(hi) + ")";
}

Interval intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (!(lo < hi)) {
    throw ParameterError("intervals " + a.to_string() + " and " + b.to_string() + " do not overlap");
  }
  return {lo, hi};
}

}  // namespace qamlab
