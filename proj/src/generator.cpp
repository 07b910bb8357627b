#include "qamlab/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"

namespace qamlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double pow_safe(double x, double p) {
  if (p == 1.0) return x;
  const double e = p * std::log(x);
  if (std::abs(e) > Generator::kLogSpaceThreshold) return std::exp(e);
  return std::pow(x, p);
}

// x^p with x in [0, inf], taking limits at the ends.
double limit_pow(double x, double p) {
  if (x == 0.0) return p > 0 ? 0.0 : kInf;
  if (x == kInf) return p > 0 ? kInf : 0.0;
  return pow_safe(x, p);
}

double affine_limit(double a, double y, double shift) {
  if (std::isinf(y)) return (a > 0) == (y > 0) ? kInf : -kInf;
  return a * y + shift;
}

void require_exponent(double p, const char* what) {
  if (!std::isfinite(p) || p == 0.0) {
    throw ParameterError(std::string(what) + " exponent must be finite and non-zero");
  }
}

Direction flip(Direction d, bool flipped) {
  if (!flipped) return d;
  return d == Direction::increasing ? Direction::decreasing : Direction::increasing;
}

Interval ordered(double u, double v) { return u < v ? Interval{u, v} : Interval{v, u}; }

}  // namespace

const char* to_string(Direction d) noexcept {
  return d == Direction::increasing ? "increasing" : "decreasing";
}

Generator::Generator(Form form, Interval domain, Interval range, Direction direction)
    : form_(std::move(form)), domain_(domain), range_(range), direction_(direction) {}

Generator Generator::power(double p) {
  require_exponent(p, "power");
  return {PowerForm{p}, Interval::positive_reals(), Interval::positive_reals(),
          p > 0 ? Direction::increasing : Direction::decreasing};
}

Generator Generator::exponential(double p) {
  require_exponent(p, "exp");
  return {ExpForm{p}, Interval::reals(), Interval::positive_reals(),
          p > 0 ? Direction::increasing : Direction::decreasing};
}

Generator Generator::reciprocal() {
  return {ReciprocalForm{}, Interval::positive_reals(), Interval::positive_reals(),
          Direction::decreasing};
}

Generator Generator::affine(double a, double b) {
  if (!std::isfinite(a) || a == 0.0 || !std::isfinite(b)) {
    throw ParameterError("affine needs finite a != 0 and finite b");
  }
  const Interval range = a > 0 ? Interval{b, kInf} : Interval{-kInf, b};
  return {AffineForm{a, b}, Interval::positive_reals(), range,
          a > 0 ? Direction::increasing : Direction::decreasing};
}

Generator Generator::tabulated(std::vector<double> xs, std::vector<double> ys, std::string source) {
  auto spline = std::make_shared<const MonotoneCubic>(std::move(xs), std::move(ys));
  const auto kx = spline->xs();
  const auto ky = spline->ys();
  const Interval domain{kx.front(), kx.back()};
  const Interval range = ordered(ky.front(), ky.back());
  const Direction dir = spline->increasing() ? Direction::increasing : Direction::decreasing;
  return {TableForm{std::move(spline), std::move(source)}, domain, range, dir};
}

Generator Generator::scaled_power(const Generator& base, double a, double p, double shift) {
  if (!std::isfinite(a) || a == 0.0 || !std::isfinite(shift)) {
    throw ParameterError("scaled power needs finite a != 0 and finite shift");
  }
  require_exponent(p, "scaled power");
  if (base.range().lo < 0.0) {
    throw ParameterError("scaled power needs a positive-valued base, got range " +
                         base.range().to_string());
  }
  // a·(a1·B^p1)^p = (a·a1^p)·B^(p1·p)
  if (const auto* inner = std::get_if<ScaledPowerForm>(&base.form());
      inner && inner->shift == 0.0 && inner->a > 0.0) {
    return scaled_power(*inner->base, a * pow_safe(inner->a, p), inner->p * p, shift);
  }
  const Interval& r = base.range();
  const double t_lo = affine_limit(a, limit_pow(r.lo, p), shift);
  const double t_hi = affine_limit(a, limit_pow(r.hi, p), shift);
  const Direction dir = flip(base.direction(), (a < 0) != (p < 0));
  return {ScaledPowerForm{std::make_shared<const Generator>(base), a, p, shift}, base.domain(),
          ordered(t_lo, t_hi), dir};
}

double Generator::eval(double x) const {
  if (!domain_.contains(x)) {
    throw DomainError(format_short(x) + " is outside the domain " + domain_.to_string(), x);
  }
  return std::visit(
      overloaded{
          [&](const PowerForm& f) { return pow_safe(x, f.p); },
          [&](const ExpForm& f) { return std::exp(f.p * x); },
          [&](const ReciprocalForm&) { return 1.0 / x; },
          [&](const AffineForm& f) { return f.a * x + f.b; },
          [&](const TableForm& f) { return (*f.spline)(x); },
          [&](const ScaledPowerForm& f) { return f.a * pow_safe(f.base->eval(x), f.p) + f.shift; },
      },
      form_);
}

double Generator::log_eval(double x) const {
  if (!domain_.contains(x)) {
    throw DomainError(format_short(x) + " is outside the domain " + domain_.to_string(), x);
  }
  const double v = std::visit(
      overloaded{
          [&](const PowerForm& f) { return f.p * std::log(x); },
          [&](const ExpForm& f) { return f.p * x; },
          [&](const ReciprocalForm&) { return -std::log(x); },
          [&](const AffineForm& f) { return std::log(f.a * x + f.b); },
          [&](const TableForm& f) { return std::log((*f.spline)(x)); },
          [&](const ScaledPowerForm& f) {
            if (f.shift == 0.0 && f.a > 0.0) return std::log(f.a) + f.p * f.base->log_eval(x);
            return std::log(eval(x));
          },
      },
      form_);
  if (std::isnan(v)) throw DomainError("generator value at " + format_short(x) + " is not positive", x);
  return v;
}

double Generator::invert(double y) const {
  if (!range_.contains(y)) {
    throw DomainError(format_short(y) + " is outside the range " + range_.to_string(), y);
  }
  const double x = std::visit(
      overloaded{
          [&](const PowerForm& f) {
            if (f.p == 1.0) return y;
            if (f.p == 2.0) return std::sqrt(y);
            if (f.p == -1.0) return 1.0 / y;
            return pow_safe(y, 1.0 / f.p);
          },
          [&](const ExpForm& f) { return std::log(y) / f.p; },
          [&](const ReciprocalForm&) { return 1.0 / y; },
          [&](const AffineForm& f) { return (y - f.b) / f.a; },
          [&](const TableForm&) {
            // Bracket from the median knot, doubling the step, then bisect.
            const auto xs = std::get<TableForm>(form_).spline->xs();
            double a = xs[xs.size() / 2];
            double fa = eval(a);
            if (fa == y) return a;
            const bool go_right = (fa < y) == increasing();
            const double bound = go_right ? domain_.inner_hi() : domain_.inner_lo();
            double step = (domain_.hi - domain_.lo) * 1e-3;
            double b = a;
            double fb = fa;
            for (;;) {
              b = go_right ? std::min(a + step, bound) : std::max(a - step, bound);
              fb = eval(b);
              if ((fb - y) * (fa - y) <= 0.0) break;
              if (b == bound) {
                throw DomainError(format_short(y) + " is not attained before the domain bound", y);
              }
              a = b;
              fa = fb;
              step *= 2.0;
            }
            double lo = std::min(a, b);
            double hi = std::max(a, b);
            double flo = lo == a ? fa : fb;
            for (int i = 0; i < kMaxBisectionSteps && hi - lo > kInversionTolerance; ++i) {
              const double mid = 0.5 * (lo + hi);
              const double fm = eval(mid);
              if ((fm - y) * (flo - y) <= 0.0) {
                hi = mid;
              } else {
                lo = mid;
                flo = fm;
              }
            }
            return 0.5 * (lo + hi);
          },
          [&](const ScaledPowerForm& f) {
            const double u = (y - f.shift) / f.a;
            return f.base->invert(f.p == 1.0 ? u : pow_safe(u, 1.0 / f.p));
          },
      },
      form_);
  if (!domain_.contains(x)) {
    throw DomainError("inverse of " + format_short(y) + " falls outside the domain " +
                          domain_.to_string(),
                      y);
  }
  return x;
}

Interval Generator::image_of(const Interval& sub) const {
  const Interval s = intersect(sub, domain_);
  const bool inc = increasing();
  const double at_lo = s.lo == domain_.lo ? (inc ? range_.lo : range_.hi) : eval(s.lo);
  const double at_hi = s.hi == domain_.hi ? (inc ? range_.hi : range_.lo) : eval(s.hi);
  return ordered(at_lo, at_hi);
}

std::string Generator::describe() const {
  return std::visit(
      overloaded{
          [](const PowerForm& f) { return "power:" + format_short(f.p); },
          [](const ExpForm& f) { return "exp:" + format_short(f.p); },
          [](const ReciprocalForm&) { return std::string("recip"); },
          [](const AffineForm& f) { return "affine:" + format_short(f.a) + "," + format_short(f.b); },
          [](const TableForm& f) {
            return f.source.empty() ? "table:<" + std::to_string(f.spline->xs().size()) + " knots>"
                                    : "table:" + f.source;
          },
          [](const ScaledPowerForm& f) {
            const auto* base = std::get_if<PowerForm>(&f.base->form());
            if (base && base->p == 1.0 && f.shift == 0.0) {
              return "apower:" + format_short(f.a) + "," + format_short(f.p);
            }
            std::string s = format_short(f.a) + "*(" + f.base->describe() + ")^" + format_short(f.p);
            if (f.shift != 0.0) s += (f.shift > 0 ? "+" : "") + format_short(f.shift);
            return s;
          },
      },
      form_);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_real(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && std::isfinite(out);
}

std::vector<double> parse_args(std::string_view desc, std::string_view args, std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= args.size()) {
    const auto comma = args.find(',', pos);
    const auto piece = args.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    double v = 0;
    if (!parse_real(piece, v)) {
      throw ParameterError("malformed generator '" + std::string(desc) + "': bad number '" +
                           std::string(trim(piece)) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected) {
    throw ParameterError("malformed generator '" + std::string(desc) + "': expected " +
                         std::to_string(expected) + " argument(s)");
  }
  return out;
}

}  // namespace

Generator parse_generator(std::string_view desc, const std::filesystem::path& base_dir) {
  const std::string_view d = trim(desc);
  const auto colon = d.find(':');
  const std::string_view name = trim(d.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : d.substr(colon + 1);
  try {
    if (name == "recip" && colon == std::string_view::npos) return Generator::reciprocal();
    if (colon == std::string_view::npos) {
      throw ParameterError("malformed generator '" + std::string(d) + "'");
    }
    if (name == "power") return Generator::power(parse_args(d, args, 1)[0]);
    if (name == "exp") return Generator::exponential(parse_args(d, args, 1)[0]);
    if (name == "affine") {
      const auto a = parse_args(d, args, 2);
      return Generator::affine(a[0], a[1]);
    }
    if (name == "apower") {
      const auto a = parse_args(d, args, 2);
      return Generator::scaled_power(Generator::identity(), a[0], a[1]);
    }
    if (name == "table") {
      const std::filesystem::path p{std::string(trim(args))};
      if (p.empty()) throw ParameterError("malformed generator '" + std::string(d) + "': missing path");
      return load_table(p.is_absolute() || base_dir.empty() ? p : base_dir / p, p.string());
    }
  } catch (const ParameterError& e) {
    if (std::string_view(e.what()).starts_with("malformed")) throw;
    throw ParameterError("malformed generator '" + std::string(d) + "': " + e.what());
  }
  throw ParameterError("malformed generator '" + std::string(d) + "': unknown form '" +
                       std::string(name) + "'");
}

Generator load_table(const std::filesystem::path& path, std::string source) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open table '" + path.string() + "'");
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const bool may_be_header = std::exchange(first, false);
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < t.size()) {
      const auto b = t.find_first_not_of(",;\t ", pos);
      if (b == std::string_view::npos) break;
      const auto e = t.find_first_of(",;\t ", b);
      tokens.push_back(t.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
      pos = e == std::string_view::npos ? t.size() : e;
    }
    double x = 0, y = 0;
    if (tokens.size() != 2 || !parse_real(tokens[0], x) || !parse_real(tokens[1], y)) {
      if (may_be_header) continue;
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,y'");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  return Generator::tabulated(std::move(xs), std::move(ys),
                              source.empty() ? path.string() : std::move(source));
}

Conjugation::Conjugation(Generator outer, Generator inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  // Fails early when the two generators have no common domain.
  (void)intersect(outer_.domain(), inner_.domain());
}

Conjugation Conjugation::power_law(double c) {
  return {Generator::power(c), Generator::identity()};
}

double Conjugation::eval(double x) const { return outer_.eval(inner_.invert(x)); }

double Conjugation::invert(double y) const { return inner_.eval(outer_.invert(y)); }

Interval Conjugation::domain() const {
  return inner_.image_of(intersect(outer_.domain(), inner_.domain()));
}

Interval Conjugation::range() const {
  return outer_.image_of(intersect(outer_.domain(), inner_.domain()));
}

Direction Conjugation::direction() const noexcept {
  return outer_.direction() == inner_.direction() ? Direction::increasing : Direction::decreasing;
}

}  // namespace qamlab
