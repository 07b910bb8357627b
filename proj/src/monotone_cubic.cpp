#include "qamlab/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>

#include "qamlab/errors.hpp"

namespace qamlab {

namespace {

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Three-point end slope, clipped so the interpolant keeps the data's shape.
double end_slope(double h0, double h1, double d0, double d1) {
  double m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(m) != sign(d0)) {
    m = 0.0;
  } else if (sign(d0) != sign(d1) && std::abs(m) > 3 * std::abs(d0)) {
    m = 3 * d0;
  }
  return m;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) throw ParameterError("monotone table needs >= 2 matching x,y knots");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) throw ParameterError("table knots must be finite");
  }
  const double dir = sign(ys_[1] - ys_[0]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(xs_[i + 1] > xs_[i])) throw ParameterError("table x column must be strictly increasing");
    if (dir == 0.0 || sign(ys_[i + 1] - ys_[i]) != dir) {
      throw ParameterError("table y column must be strictly monotone");
    }
  }

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  slopes_.assign(n, 0.0);
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0) continue;
    const double w1 = 2 * h[k] + h[k - 1];
    const double w2 = h[k] + 2 * h[k - 1];
    slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double MonotoneCubic::operator()(double x) const {
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  k = std::min(k, xs_.size() - 2);
  const double h = xs_[k + 1] - xs_[k];
  const double t = (x - xs_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * ys_[k] + h10 * h * slopes_[k] + h01 * ys_[k + 1] + h11 * h * slopes_[k + 1];
}

}  // namespace qamlab
