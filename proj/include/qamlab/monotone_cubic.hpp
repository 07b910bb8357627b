#pragma once

#include <span>
#include <vector>

namespace qamlab {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson slopes)
/// through strictly monotone data. Strictly monotone knots in, strictly monotone
/// interpolant out.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }
  bool increasing() const noexcept { return ys_.back() > ys_.front(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> slopes_;
};

}  // namespace qamlab
