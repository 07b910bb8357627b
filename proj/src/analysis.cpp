#include "qamlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"
#include "qamlab/rng.hpp"

namespace qamlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Defect {
  double value;  // positive = violation
  double scale;  // magnitude of the quantities compared
};

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

Defect mixing_defect(const PairMap& m, double g1, double g2, double x1, double x2, double y1,
                     double y2, InequalityDirection dir) {
  const double px = g1 * m(x1, x2);
  const double py = g2 * m(y1, y2);
  const double pz = m(g1 * x1 + g2 * y1, g1 * x2 + g2 * y2);
  const double d = (px + py) - pz;
  return {dir == InequalityDirection::less_equal ? d : -d, max_abs({px, py, pz})};
}

Defect homogeneity(const PairMap& m, double gamma, double x1, double x2) {
  const double scaled = m(gamma * x1, gamma * x2);
  const double expected = gamma * m(x1, x2);
  return {std::abs(scaled - expected) / std::abs(expected), 1.0};
}

Defect superadditivity(const PairMap& m, double x1, double x2, double y1, double y2) {
  const double px = m(x1, x2);
  const double py = m(y1, y2);
  const double ps = m(x1 + y1, x2 + y2);
  return {(px + py) - ps, max_abs({px, py, ps})};
}

Defect section(const PairMap& m, double a, double b) {
  const double ha = m(a, 1.0);
  const double hb = m(b, 1.0);
  const double hm = m(0.5 * (a + b), 1.0);
  return {0.5 * (ha + hb) - hm, max_abs({ha, hb, hm})};
}

Defect convexity(const PairMap& m, double x1, double x2, double y1, double y2) {
  const double px = m(x1, x2);
  const double py = m(y1, y2);
  const double pm = m(0.5 * (x1 + y1), 0.5 * (x2 + y2));
  return {pm - 0.5 * (px + py), max_abs({px, py, pm})};
}

// Sampling range for coordinates: sampler's [lo, hi] clipped to the open domain.
struct Range {
  double lo;
  double hi;
};

Range clip(const Sampler& s, const Interval& domain) {
  double lo = std::max(s.lo, domain.lo);
  double hi = std::min(s.hi, domain.hi);
  if (lo == domain.lo) lo = lo > 0 ? lo * (1 + 1e-9) : domain.inner_lo();
  if (hi == domain.hi) hi = hi * (1 - 1e-9);
  if (!(lo > 0.0) || !(lo < hi)) {
    throw ParameterError("sampler range [" + format_short(s.lo) + ", " + format_short(s.hi) +
                         "] does not meet the domain " + domain.to_string());
  }
  return {lo, hi};
}

std::vector<double> log_grid(Range r, std::size_t n) {
  std::vector<double> g;
  if (n == 0) return g;
  if (n == 1) return {std::sqrt(r.lo * r.hi)};
  const double a = std::log(r.lo);
  const double b = std::log(r.hi);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  g.front() = r.lo;
  g.back() = r.hi;
  return g;
}

class Tracker {
 public:
  explicit Tracker(double tol) { v_.tolerance = tol; v_.worst_violation = kNegInf; }

  template <class Fn>
  void probe(Fn&& fn, std::initializer_list<double> inputs) {
    Defect d{};
    try {
      d = fn();
    } catch (const DomainError&) {
      return;
    } catch (const WellDefinednessError&) {
      return;
    }
    ++v_.trials;
    double normalized = d.value / std::max(1.0, d.scale);
    if (std::isnan(normalized)) normalized = std::numeric_limits<double>::infinity();
    if (normalized > v_.worst_violation) {
      v_.worst_violation = normalized;
      v_.witness.assign(inputs.begin(), inputs.end());
    }
  }

  CheckerVerdict finish() {
    v_.holds = v_.worst_violation <= v_.tolerance;
    return v_;
  }

 private:
  CheckerVerdict v_;
};

// Visits random pairs of points plus every pair of grid points.
template <class Fn>
void for_each_pair(const Sampler& s, Range r, Fn&& fn) {
  Rng rng(s.seed);
  for (std::size_t t = 0; t < s.trials; ++t) {
    const double x1 = rng.log_uniform(r.lo, r.hi);
    const double x2 = rng.log_uniform(r.lo, r.hi);
    const double y1 = rng.log_uniform(r.lo, r.hi);
    const double y2 = rng.log_uniform(r.lo, r.hi);
    fn(x1, x2, y1, y2);
  }
  const auto grid = log_grid(r, s.grid);
  for (double x1 : grid)
    for (double x2 : grid)
      for (double y1 : grid)
        for (double y2 : grid) fn(x1, x2, y1, y2);
}

}  // namespace

const char* to_string(PairMapKind kind) noexcept {
  switch (kind) {
    case PairMapKind::phi:
      return "Phi";
    case PairMapKind::phi_tilde:
      return "PhiTilde";
    case PairMapKind::psi_t:
      return "PsiT";
  }
  return "?";
}

PairMap::PairMap(PairMapKind kind, Conjugation conj, double p1, double p2)
    : kind_(kind), conj_(std::move(conj)), p1_(p1), p2_(p2) {
  if (!(p1_ > 0.0) || !(p2_ > 0.0) || !std::isfinite(p1_) || !std::isfinite(p2_)) {
    throw ParameterError("pair map weights must be positive and finite");
  }
}

PairMap PairMap::phi(Conjugation conj, double p1, double p2) {
  return {PairMapKind::phi, std::move(conj), p1, p2};
}

PairMap PairMap::phi_tilde(Conjugation conj, double p1, double p2) {
  return {PairMapKind::phi_tilde, std::move(conj), p1, p2};
}

PairMap PairMap::psi_t(Conjugation conj, double t) {
  if (!(t > 0.0 && t < 1.0)) throw ParameterError("psi_t needs t in (0, 1), got " + format_short(t));
  return {PairMapKind::psi_t, std::move(conj), t, 1.0 - t};
}

double PairMap::operator()(double x1, double x2) const {
  if (kind_ == PairMapKind::phi_tilde) {
    return -conj_.eval(p1_ * conj_.invert(x1) + p2_ * conj_.invert(x2));
  }
  return conj_.invert(p1_ * conj_.eval(x1) + p2_ * conj_.eval(x2));
}

Interval PairMap::coordinate_domain() const {
  const Interval d = kind_ == PairMapKind::phi_tilde ? conj_.range() : conj_.domain();
  return intersect(d, Interval::positive_reals());
}

double mixing_inequality_defect(const PairMap& m, double gamma1, double gamma2, double x1, double x2,
                                double y1, double y2, InequalityDirection dir) {
  return mixing_defect(m, gamma1, gamma2, x1, x2, y1, y2, dir).value;
}

double homogeneity_defect(const PairMap& m, double gamma, double x1, double x2) {
  return homogeneity(m, gamma, x1, x2).value;
}

double superadditivity_defect(const PairMap& m, double x1, double x2, double y1, double y2) {
  return superadditivity(m, x1, x2, y1, y2).value;
}

double section_concavity_defect(const PairMap& m, double a, double b) { return section(m, a, b).value; }

double convexity_defect(const PairMap& m, double x1, double x2, double y1, double y2) {
  return convexity(m, x1, x2, y1, y2).value;
}

CheckerVerdict check_mixing_inequality(const PairMap& m, double gamma1, double gamma2,
                                       const Sampler& sampler, InequalityDirection dir) {
  if (!(gamma1 > 0.0 && gamma1 < 1.0 && gamma1 + gamma2 > 1.0)) {
    throw ParameterError("mixing inequality needs 0 < gamma1 < 1 < gamma1 + gamma2");
  }
  const Range r = clip(sampler, m.coordinate_domain());
  Tracker t(kCheckerTolerance);
  for_each_pair(sampler, r, [&](double x1, double x2, double y1, double y2) {
    t.probe([&] { return mixing_defect(m, gamma1, gamma2, x1, x2, y1, y2, dir); }, {x1, x2, y1, y2});
  });
  return t.finish();
}

CheckerVerdict check_homogeneous(const PairMap& m, const Sampler& sampler) {
  const Range r = clip(sampler, m.coordinate_domain());
  Tracker t(kCheckerTolerance);
  Rng rng(sampler.seed, 1);
  for (std::size_t k = 0; k < sampler.trials; ++k) {
    const double gamma = rng.log_uniform(1e-2, 1e2);
    const double x1 = rng.log_uniform(r.lo, r.hi);
    const double x2 = rng.log_uniform(r.lo, r.hi);
    t.probe([&] { return homogeneity(m, gamma, x1, x2); }, {gamma, x1, x2});
  }
  const auto grid = log_grid(r, sampler.grid);
  for (double gamma : {0.5, 2.0, 3.0})
    for (double x1 : grid)
      for (double x2 : grid) t.probe([&] { return homogeneity(m, gamma, x1, x2); }, {gamma, x1, x2});
  return t.finish();
}

CheckerVerdict check_superadditive(const PairMap& m, const Sampler& sampler) {
  const Range r = clip(sampler, m.coordinate_domain());
  Tracker t(kCheckerTolerance);
  for_each_pair(sampler, r, [&](double x1, double x2, double y1, double y2) {
    t.probe([&] { return superadditivity(m, x1, x2, y1, y2); }, {x1, x2, y1, y2});
  });
  return t.finish();
}

CheckerVerdict section_concavity(const PairMap& m, const Sampler& sampler) {
  const Range r = clip(sampler, m.coordinate_domain());
  Tracker t(kCheckerTolerance);
  Rng rng(sampler.seed, 2);
  for (std::size_t k = 0; k < sampler.trials; ++k) {
    const double a = rng.log_uniform(r.lo, r.hi);
    const double b = rng.log_uniform(r.lo, r.hi);
    t.probe([&] { return section(m, a, b); }, {a, b});
  }
  const auto grid = log_grid(r, sampler.grid * sampler.grid);
  for (double a : grid)
    for (double b : grid) t.probe([&] { return section(m, a, b); }, {a, b});
  return t.finish();
}

CheckerVerdict convexity_check(const PairMap& m, const Sampler& sampler) {
  const Range r = clip(sampler, m.coordinate_domain());
  Tracker t(kCheckerTolerance);
  for_each_pair(sampler, r, [&](double x1, double x2, double y1, double y2) {
    t.probe([&] { return convexity(m, x1, x2, y1, y2); }, {x1, x2, y1, y2});
  });
  return t.finish();
}

bool liminf_at_origin_nonnegative(const PairMap& m) {
  const Interval d = m.coordinate_domain();
  if (d.lo > 0.0) return false;
  double smallest = std::numeric_limits<double>::infinity();
  for (double ratio : {1e-3, 1e-1, 1.0, 1e1, 1e3}) {
    const double u1 = 1.0 / std::sqrt(1.0 + ratio * ratio);
    const double u2 = ratio * u1;
    for (int decade = 0; decade <= 6; ++decade) {
      const double s = std::pow(10.0, -decade);
      try {
        const double v = m(s * u1, s * u2);
        if (decade == 6) smallest = std::min(smallest, v);
      } catch (const DomainError&) {
        return false;
      }
    }
  }
  return smallest >= -1e-5;
}

double lambda_gamma(const Conjugation& conj, double gamma, double x) {
  return conj.eval(gamma * conj.invert(x));
}

LambdaStructure lambda_structure(const Conjugation& conj, const Sampler& sampler) {
  LambdaStructure out;
  const Interval domain = intersect(conj.domain(), Interval::positive_reals());
  const Range r = clip(sampler, domain);

  Rng rng(sampler.seed, 3);
  out.additivity_violation = kNegInf;
  for (std::size_t k = 0; k < sampler.trials; ++k) {
    const double gamma = rng.log_uniform(0.1, 10.0);
    const double x = rng.log_uniform(r.lo, r.hi);
    const double y = rng.log_uniform(r.lo, r.hi);
    double lx, ly, lxy;
    try {
      lx = lambda_gamma(conj, gamma, x);
      ly = lambda_gamma(conj, gamma, y);
      lxy = lambda_gamma(conj, gamma, x + y);
    } catch (const DomainError&) {
      continue;
    }
    if (!std::isfinite(lx) || !std::isfinite(ly) || !std::isfinite(lxy)) continue;
    const double rel = std::abs(lx + ly - lxy) / std::max({std::abs(lxy), std::abs(lx) + std::abs(ly),
                                                           std::numeric_limits<double>::min()});
    if (rel > out.additivity_violation) {
      out.additivity_violation = rel;
      out.additivity_witness = {gamma, x, y};
    }
  }
  out.additive = out.additivity_violation <= kCheckerTolerance;

  // m needs φ⁻¹(1), so 1 must lie in φ's range
  if (!conj.range().contains(1.0)) return out;
  const double anchor = conj.invert(1.0);
  auto m_of = [&](double gamma) { return conj.eval(gamma * anchor); };

  const double la = std::log(1e-3);
  const double lb = std::log(1e3);
  for (std::size_t i = 0; i < kExponentFitPoints; ++i) {
    const double gamma =
        std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(kExponentFitPoints - 1));
    try {
      const double m = m_of(gamma);
      if (std::isfinite(m) && m > 0.0) out.m_samples.emplace_back(gamma, m);
    } catch (const DomainError&) {
    }
  }
  if (out.m_samples.size() < 2) return out;

  out.multiplicativity_violation = 0.0;
  for (std::size_t i = 0; i < out.m_samples.size(); i += 3) {
    for (std::size_t j = i; j < out.m_samples.size(); j += 5) {
      const auto [gi, mi] = out.m_samples[i];
      const auto [gj, mj] = out.m_samples[j];
      double mij;
      try {
        mij = m_of(gi * gj);
      } catch (const DomainError&) {
        continue;
      }
      if (!std::isfinite(mij) || !std::isfinite(mi * mj)) continue;
      const double rel = std::abs(mij - mi * mj) / std::max(std::abs(mij), std::numeric_limits<double>::min());
      out.multiplicativity_violation = std::max(out.multiplicativity_violation, rel);
    }
  }
  out.multiplicative = out.multiplicativity_violation <= kCheckerTolerance;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(out.m_samples.size());
  for (const auto& [gamma, m] : out.m_samples) {
    const double lx = std::log(gamma);
    const double ly = std::log(m);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double mx = sx / n;
  const double my = sy / n;
  const double slope = (sxy - n * mx * my) / (sxx - n * mx * mx);
  const double intercept = my - slope * mx;
  out.exponent = slope;
  out.fit_residual = 0.0;
  for (const auto& [gamma, m] : out.m_samples) {
    out.fit_residual = std::max(out.fit_residual, std::abs(std::log(m) - intercept - slope * std::log(gamma)));
  }
  return out;
}

KappaValue kappa(double a, double b, double beta1, double beta2, double t) {
  if (!(a > 0.0) || !std::isfinite(b) || b == 0.0 || !(beta1 > 0.0) || !(beta2 > 0.0) || !(t > 0.0)) {
    throw ParameterError("kappa needs a > 0, b != 0, positive weights and t > 0");
  }
  const double value = a * std::pow(beta1 * std::pow(t / a, 1.0 / b) + beta2 * std::pow(1.0 / a, 1.0 / b), b);
  const double second = beta1 * beta2 * ((1.0 - b) / b) *
                        std::pow(beta1 + beta2 * std::pow(t, -1.0 / b), b - 2.0) *
                        std::pow(t, -1.0 - 1.0 / b);
  return {value, second};
}

RemarkIdentity remark_identity(double x1, double x2, double y1, double y2) {
  if (!(x1 > 0 && x2 > 0 && y1 > 0 && y2 > 0)) throw ParameterError("remark_identity needs positive inputs");
  static const PairMap tilde =
      PairMap::phi_tilde(Conjugation(Generator::reciprocal(), Generator::identity()), 1.0, 1.0);
  const double px = tilde(x1, x2);
  const double py = tilde(y1, y2);
  const double ps = tilde(x1 + y1, x2 + y2);
  const double det = x1 * y2 - x2 * y1;
  const double closed = det * det / ((x1 + x2 + y1 + y2) * (x1 + x2) * (y1 + y2));
  return {(px + py) - ps, closed, std::abs(px) + std::abs(py) + std::abs(ps)};
}

std::string verdict_csv_header() {
  return "kind,params,trials,worst_violation,holds,witness_1,witness_2,witness_3,witness_4";
}

std::string verdict_csv_row(std::string_view kind, std::string_view params, const CheckerVerdict& v) {
  std::string row = csv_field(kind) + "," + csv_field(params) + "," + std::to_string(v.trials) + "," +
                    format_full(v.worst_violation) + "," + (v.holds ? "true" : "false");
  for (std::size_t i = 0; i < 4; ++i) {
    row += ",";
    if (i < v.witness.size()) row += format_full(v.witness[i]);
  }
  return row;
}

}  // namespace qamlab
