#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qamlab/interval.hpp"
#include "qamlab/monotone_cubic.hpp"

namespace qamlab {

enum class Direction { increasing, decreasing };

const char* to_string(Direction d) noexcept;

class Generator;

struct PowerForm {
  double p;
};
struct ExpForm {
  double p;
};
struct ReciprocalForm {};
struct AffineForm {
  double a;
  double b;
};
struct TableForm {
  std::shared_ptr<const MonotoneCubic> spline;
  std::string source;
};
/// a * base(t)^p + shift
struct ScaledPowerForm {
  std::shared_ptr<const Generator> base;
  double a;
  double p;
  double shift;
};

/// A continuous strictly monotone map from an open interval into the reals.
///
/// Catalog forms evaluate and invert in closed form. Tabulated forms interpolate
/// with a monotone cubic and invert by bracketed bisection. Instances are
/// immutable and cheap to copy.
class Generator {
 public:
  using Form = std::variant<PowerForm, ExpForm, ReciprocalForm, AffineForm, TableForm,
                            ScaledPowerForm>;

  /// Inversion stops once the bracket is narrower than this.
  static constexpr double kInversionTolerance = 1e-12;
  static constexpr int kMaxBisectionSteps = 200;
  /// Powers switch to exp(p * log x) past this exponent magnitude.
  static constexpr double kLogSpaceThreshold = 600.0;

  /// t^p on (0, inf).
  static Generator power(double p);
  static Generator identity() { return power(1.0); }
  /// exp(p t) on the whole line.
  static Generator exponential(double p);
  /// 1/t on (0, inf).
  static Generator reciprocal();
  /// a t + b on (0, inf).
  static Generator affine(double a, double b);
  /// Monotone cubic through the knots; domain is (xs.front(), xs.back()).
  static Generator tabulated(std::vector<double> xs, std::vector<double> ys,
                             std::string source = {});
  /// a * base^p + shift on base's domain. Requires base to be positive-valued.
  static Generator scaled_power(const Generator& base, double a, double p, double shift = 0.0);

  double eval(double x) const;
  /// log(eval(x)) computed without forming eval(x) where the form allows it.
  double log_eval(double x) const;
  double invert(double y) const;

  const Interval& domain() const noexcept { return domain_; }
  const Interval& range() const noexcept { return range_; }
  Direction direction() const noexcept { return direction_; }
  bool increasing() const noexcept { return direction_ == Direction::increasing; }
  /// True when this is a bijection of its domain onto (0, inf).
  bool onto_positive_reals() const noexcept { return range_.is_positive_reals(); }

  /// Image of a sub-interval of the domain under this map.
  Interval image_of(const Interval& sub) const;

  const Form& form() const noexcept { return form_; }
  /// Grammar string when the form has one, otherwise a readable description.
  std::string describe() const;

 private:
  Generator(Form form, Interval domain, Interval range, Direction direction);

  Form form_;
  Interval domain_;
  Interval range_;
  Direction direction_;
};

/// Parses `power:p`, `affine:a,b`, `apower:a,p`, `exp:p`, `recip`, `table:path.csv`.
/// Relative table paths resolve against `base_dir`.
Generator parse_generator(std::string_view desc, const std::filesystem::path& base_dir = {});

/// Reads a two-column x,y CSV (optional header line) into a tabulated generator.
/// `source` is what describe() reports; defaults to the path.
Generator load_table(const std::filesystem::path& path, std::string source = {});

/// outer ∘ inner⁻¹. With (outer, inner) = (g, f) this is g∘f⁻¹, the map through which
/// the structural conditions on a generator pair are expressed.
class Conjugation {
 public:
  Conjugation(Generator outer, Generator inner);

  /// x ↦ x^c as a conjugation of power(c) by the identity.
  static Conjugation power_law(double c);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double invert(double y) const;

  /// Inputs accepted by eval (image of the shared domain under inner).
  Interval domain() const;
  /// Values produced by eval.
  Interval range() const;
  Direction direction() const noexcept;

  const Generator& outer() const noexcept { return outer_; }
  const Generator& inner() const noexcept { return inner_; }

 private:
  Generator outer_;
  Generator inner_;
};

}  // namespace qamlab
