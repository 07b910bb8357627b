#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qamlab/generator.hpp"

namespace qamlab {

enum class PairMapKind { phi, phi_tilde, psi_t };

const char* to_string(PairMapKind kind) noexcept;

/// Two-variable maps on (0, inf)² built from a conjugation φ and weights (p1, p2):
///   phi:       φ⁻¹(p1 φ(x1) + p2 φ(x2))
///   phi_tilde: −φ(p1 φ⁻¹(x1) + p2 φ⁻¹(x2))
///   psi_t:     φ⁻¹(t φ(x1) + (1 − t) φ(x2)), with φ = f∘g⁻¹ and t in (0, 1)
class PairMap {
 public:
  static PairMap phi(Conjugation conj, double p1, double p2);
  static PairMap phi_tilde(Conjugation conj, double p1, double p2);
  static PairMap psi_t(Conjugation conj, double t);

  double operator()(double x1, double x2) const;

  PairMapKind kind() const noexcept { return kind_; }
  const Conjugation& conjugation() const noexcept { return conj_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  /// Region of (0, inf) on which both coordinates may range.
  Interval coordinate_domain() const;

 private:
  PairMap(PairMapKind kind, Conjugation conj, double p1, double p2);

  PairMapKind kind_;
  Conjugation conj_;
  double p1_;
  double p2_;
};

struct CheckerVerdict {
  bool holds = true;
  /// Largest violation seen, normalized by max(1, |values involved|).
  double worst_violation = 0.0;
  /// Inputs attaining worst_violation, flattened (x1, x2, y1, y2, ... per checker).
  std::vector<double> witness;
  std::size_t trials = 0;
  double tolerance = 0.0;
};

/// Random points are log-uniform on [lo, hi] (clipped to the map's domain); a
/// deterministic log grid with `grid` points per axis is checked as well.
struct Sampler {
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  double lo = 1e-3;
  double hi = 1e3;
  std::size_t grid = 5;
};

inline constexpr double kCheckerTolerance = 1e-9;

enum class InequalityDirection { less_equal, greater_equal };

// Pointwise defects; positive values are violations.
double mixing_inequality_defect(const PairMap& m, double gamma1, double gamma2, double x1, double x2,
                          double y1, double y2, InequalityDirection dir);
double homogeneity_defect(const PairMap& m, double gamma, double x1, double x2);
double superadditivity_defect(const PairMap& m, double x1, double x2, double y1, double y2);
double section_concavity_defect(const PairMap& m, double a, double b);
double convexity_defect(const PairMap& m, double x1, double x2, double y1, double y2);

/// γ1 Ψ(x) + γ2 Ψ(y) ≤ Ψ(γ1 x + γ2 y) (or ≥) over sampled x, y. Requires 0 < γ1 < 1 < γ1 + γ2.
CheckerVerdict check_mixing_inequality(const PairMap& m, double gamma1, double gamma2,
                                 const Sampler& sampler,
                                 InequalityDirection dir = InequalityDirection::less_equal);
/// |Ψ(γx) − γΨ(x)| ≤ tol·|γΨ(x)|; witness is (γ, x1, x2).
CheckerVerdict check_homogeneous(const PairMap& m, const Sampler& sampler);
/// Ψ(x + y) ≥ Ψ(x) + Ψ(y); witness is (x1, x2, y1, y2).
CheckerVerdict check_superadditive(const PairMap& m, const Sampler& sampler);
/// Midpoint concavity of t ↦ Ψ(t, 1); witness is (a, b).
CheckerVerdict section_concavity(const PairMap& m, const Sampler& sampler);
/// Midpoint convexity of Ψ on segments of (0, inf)²; witness is (x1, x2, y1, y2).
CheckerVerdict convexity_check(const PairMap& m, const Sampler& sampler);

/// liminf of Ψ at the origin is >= 0, probed along rays over six decades of scale.
bool liminf_at_origin_nonnegative(const PairMap& m);

/// Λ_γ(x) = φ(γ φ⁻¹(x)).
double lambda_gamma(const Conjugation& conj, double gamma, double x);

struct LambdaStructure {
  bool additive = true;
  double additivity_violation = 0.0;
  /// (γ, x, y) attaining additivity_violation.
  std::vector<double> additivity_witness;
  /// m(γ) = φ(γ φ⁻¹(1)) on the log-spaced γ grid; empty when 1 is outside φ's range.
  std::vector<std::pair<double, double>> m_samples;
  bool multiplicative = false;
  double multiplicativity_violation = 0.0;
  /// Least-squares slope of log m against log γ, and the max absolute log residual.
  double exponent = 0.0;
  double fit_residual = 0.0;
};

inline constexpr std::size_t kExponentFitPoints = 64;

LambdaStructure lambda_structure(const Conjugation& conj, const Sampler& sampler);

struct KappaValue {
  double value;
  double second;
};

/// κ(t) = a(β1 (t/a)^{1/b} + β2 (1/a)^{1/b})^b and its closed-form second derivative
/// κ″(t) = β1β2 ((1 − b)/b)(β1 + β2 t^{−1/b})^{b−2} t^{−1−1/b}.
KappaValue kappa(double a, double b, double beta1, double beta2, double t);

struct RemarkIdentity {
  /// Φ̃(x) + Φ̃(y) − Φ̃(x + y) for φ(x) = 1/x and unit weights.
  double lhs_sum;
  /// (x1 y2 − x2 y1)² / ((x1 + x2 + y1 + y2)(x1 + x2)(y1 + y2)).
  double closed_form;
  /// |Φ̃(x)| + |Φ̃(y)| + |Φ̃(x + y)|: the magnitude the cancellation in lhs_sum starts from.
  double term_scale;
};

RemarkIdentity remark_identity(double x1, double x2, double y1, double y2);

std::string verdict_csv_header();
std::string verdict_csv_row(std::string_view kind, std::string_view params, const CheckerVerdict& v);

}  // namespace qamlab
