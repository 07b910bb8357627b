#pragma once

#include <string>
#include <vector>

#include "qamlab/generator.hpp"
#include "qamlab/measure.hpp"

namespace qamlab {

enum class Relation { proportional, affine, power, none };
enum class Condition { thm_a_commute, thm_b_commute, l1, l2, p2p3, unclassified };
/// What the matching characterization says about the gap on every test function.
enum class Prediction { commute, holds, violated, unknown };

const char* to_string(Relation r) noexcept;
const char* to_string(Condition c) noexcept;
const char* to_string(Prediction p) noexcept;

/// Sample points shared by both generators of a pair.
struct ProbeGrid {
  std::vector<double> points;

  static constexpr std::size_t kDefaultPoints = 128;
  static constexpr double kDefaultDecades = 8.0;

  /// Log-spaced points inside `domain`. Half-lines get offsets 10^k from the finite end;
  /// bounded intervals get offsets scaled by their width; the whole line gets a linear
  /// grid on ±ln(10^{decades/2}) so an exponential spans `decades` decades.
  static ProbeGrid for_domain(const Interval& domain, std::size_t n = kDefaultPoints,
                              double decades = kDefaultDecades);
};

inline constexpr double kRelationTolerance = 1e-8;

struct PowerFit {
  double a;
  double b;
  /// max |log f − log a − b log g| over the grid.
  double residual;
};

struct AffineFit {
  double a;
  double b;
  /// max |f − a g − b| / max(1, |f|) over the grid.
  double residual;
  /// f/g is constant to kRelationTolerance in log terms.
  bool proportional;
  double ratio;
};

/// Least squares for log f = log a + b log g. Throws ParameterError on a degenerate grid
/// or when either generator takes non-positive values.
PowerFit fit_power(const Generator& f, const Generator& g, const ProbeGrid& grid);
AffineFit fit_affine(const Generator& f, const Generator& g, const ProbeGrid& grid);

struct Classification {
  Relation relation = Relation::none;
  /// (a, b) of f = a g^b or f = a g + b; for proportional pairs a = c and b = 1.
  double a = 0.0;
  double b = 0.0;
  Direction dir_f = Direction::increasing;
  Direction dir_g = Direction::increasing;
  Condition condition = Condition::unclassified;
  Prediction predicted = Prediction::unknown;
  double residual = 0.0;
  /// Which characterization produced the prediction.
  std::string citation;

  /// One-line human summary, e.g. "L1 (power law, g increasing): f = 2·g^3, b=3 ≥ 1".
  std::string summary() const;
};

/// Proportional, then affine (probability spaces), then the monotonicity gate, then power
/// with the L1/L2 gates, then convexity of Ψ_t on probability spaces.
Classification classify_pair(const Generator& f, const Generator& g, const MeasureSpace& X,
                             const MeasureSpace& Y);

std::string classification_csv_header();
std::string classification_csv_row(const Classification& c);
std::string classification_json(const Classification& c);

}  // namespace qamlab
