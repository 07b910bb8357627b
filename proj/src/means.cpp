#include "qamlab/means.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"
#include "qamlab/kernels.hpp"

namespace qamlab {

namespace {

// Stack storage for the small grids this library works with, heap beyond that.
class Scratch {
 public:
  explicit Scratch(std::size_t n) : n_(n) {
    if (n_ > inline_.size()) heap_.resize(n_);
  }
  double* data() noexcept { return n_ > inline_.size() ? heap_.data() : inline_.data(); }
  std::span<double> span() noexcept { return {data(), n_}; }
  double& operator[](std::size_t i) noexcept { return data()[i]; }

 private:
  std::size_t n_;
  std::array<double, 32> inline_{};
  std::vector<double> heap_;
};

void require_shape(const MeasureSpace& X, const MeasureSpace& Y, const SimpleFunction& h) {
  if (h.rows() != X.size() || h.cols() != Y.size()) {
    throw ParameterError("grid is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                         " but the spaces have " + std::to_string(X.size()) + " and " +
                         std::to_string(Y.size()) + " atoms");
  }
}

// Intermediate means must stay inside the outer generator's domain.
void require_inside(const Generator& gen, double v) {
  if (!gen.domain().contains(v)) {
    throw WellDefinednessError("intermediate mean " + format_short(v) + " is outside " +
                                   gen.domain().to_string(),
                               v);
  }
}

}  // namespace

double qam(const Generator& gen, std::span<const double> weights, std::span<const double> values) {
  if (weights.size() != values.size()) {
    throw ParameterError("qam: " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(values.size()) + " values");
  }
  Scratch mapped(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    mapped[i] = gen.eval(values[i]);
    if (!std::isfinite(mapped[i])) {
      throw WellDefinednessError("generator value at " + format_short(values[i]) +
                                     " is not representable",
                                 mapped[i]);
    }
  }
  const double aggregate = kernels::weighted_sum(weights, mapped.span());
  if (!gen.range().contains(aggregate)) {
    throw WellDefinednessError("aggregate " + format_short(aggregate) + " is outside the range " +
                                   gen.range().to_string(),
                               aggregate);
  }
  try {
    return gen.invert(aggregate);
  } catch (const DomainError&) {
    throw WellDefinednessError("aggregate " + format_short(aggregate) +
                                   " has no representable preimage",
                               aggregate);
  }
}

double lhs_mixed(const Generator& f, const Generator& g, const MeasureSpace& X,
                 const MeasureSpace& Y, const SimpleFunction& h) {
  require_shape(X, Y, h);
  Scratch inner(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    inner[i] = qam(g, Y.weights(), h.row(i));
    require_inside(f, inner[i]);
  }
  return qam(f, X.weights(), inner.span());
}

double rhs_mixed(const Generator& f, const Generator& g, const MeasureSpace& X,
                 const MeasureSpace& Y, const SimpleFunction& h) {
  require_shape(X, Y, h);
  Scratch column(X.size());
  Scratch inner(Y.size());
  for (std::size_t j = 0; j < Y.size(); ++j) {
    for (std::size_t i = 0; i < X.size(); ++i) column[i] = h(i, j);
    inner[j] = qam(f, X.weights(), column.span());
    require_inside(g, inner[j]);
  }
  return qam(g, Y.weights(), inner.span());
}

GapReport gap(const Generator& f, const Generator& g, const MeasureSpace& X, const MeasureSpace& Y,
              const SimpleFunction& h) {
  try {
    const double lhs = lhs_mixed(f, g, X, Y, h);
    const double rhs = rhs_mixed(f, g, X, Y, h);
    return {lhs, rhs, rhs - lhs, true};
  } catch (const WellDefinednessError&) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan, false};
  }
}

GapReport four_point_gap(const Generator& f, const Generator& g, double a1, double a2, double b1,
                         double b2, double x, double y, double z, double w) {
  const MeasureSpace X({a1, a2});
  const MeasureSpace Y({b1, b2});
  const Interval domain = intersect(f.domain(), g.domain());
  const SimpleFunction h(2, 2, {x, y, z, w}, domain);
  return gap(f, g, X, Y, h);
}

double minkowski_gap(const Generator& g, double b, const MeasureSpace& X, const MeasureSpace& Y,
                     const SimpleFunction& h) {
  if (!std::isfinite(b) || b < 1.0) throw ParameterError("minkowski_gap needs b >= 1, got " + format_short(b));
  if (!g.increasing() || !g.onto_positive_reals()) {
    throw ParameterError("minkowski_gap needs g increasing onto (0, inf)");
  }
  require_shape(X, Y, h);
  const std::size_t m = X.size();
  const std::size_t n = Y.size();
  std::vector<double> G(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) G[i * n + j] = g.eval(h(i, j));
  }

  // ‖ ∫_Y G dμ ‖_{L^b(λ)}
  Scratch row_powers(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = kernels::weighted_sum(Y.weights(), std::span<const double>(G.data() + i * n, n));
    row_powers[i] = std::pow(s, b);
  }
  const double lhs_norm = std::pow(kernels::weighted_sum(X.weights(), row_powers.span()), 1.0 / b);

  // ∫_Y ‖G(·, y)‖_{L^b(λ)} dμ
  Scratch column(m);
  Scratch norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) column[i] = std::pow(G[i * n + j], b);
    norms[j] = std::pow(kernels::weighted_sum(X.weights(), column.span()), 1.0 / b);
  }
  const double rhs_norm = kernels::weighted_sum(Y.weights(), norms.span());

  return g.invert(rhs_norm) - g.invert(lhs_norm);
}

}  // namespace qamlab
