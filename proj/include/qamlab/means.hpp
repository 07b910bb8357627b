#pragma once

#include <span>

#include "qamlab/generator.hpp"
#include "qamlab/measure.hpp"

namespace qamlab {

/// gen⁻¹(Σ wᵢ gen(vᵢ)). Throws WellDefinednessError when the aggregate leaves gen's range.
double qam(const Generator& gen, std::span<const double> weights, std::span<const double> values);

/// Y-mean with g inside, X-mean with f outside.
double lhs_mixed(const Generator& f, const Generator& g, const MeasureSpace& X,
                 const MeasureSpace& Y, const SimpleFunction& h);
/// X-mean with f inside, Y-mean with g outside.
double rhs_mixed(const Generator& f, const Generator& g, const MeasureSpace& X,
                 const MeasureSpace& Y, const SimpleFunction& h);

struct GapReport {
  double lhs;
  double rhs;
  /// rhs - lhs; the subcommutativity inequality holds on this instance iff gap >= 0.
  double gap;
  bool well_defined;
};

/// Both sides and their difference. An instance whose means are undefined comes back
/// with well_defined == false and NaN sides; other errors propagate.
GapReport gap(const Generator& f, const Generator& g, const MeasureSpace& X,
              const MeasureSpace& Y, const SimpleFunction& h);

/// gap() on the 2-atom spaces (a1, a2), (b1, b2) with h = [[x, y], [z, w]].
GapReport four_point_gap(const Generator& f, const Generator& g, double a1, double a2, double b1,
                         double b2, double x, double y, double z, double w);

/// gap(a·g^b, g) evaluated through the mixed-norm form
///   ‖ ∫_Y G dμ ‖_{L^b(λ)}  vs  ∫_Y ‖G‖_{L^b(λ)} dμ,   G = g∘h,
/// mapped back through g⁻¹. Requires g increasing onto (0, inf) and b >= 1.
double minkowski_gap(const Generator& g, double b, const MeasureSpace& X, const MeasureSpace& Y,
                     const SimpleFunction& h);

}  // namespace qamlab
