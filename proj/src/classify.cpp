#include "qamlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include <json.hpp>

#include "qamlab/analysis.hpp"
#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"

namespace qamlab {

namespace {

// Slack on the b >= 1 / b <= 1 gates, far below any fit that passed kRelationTolerance.
constexpr double kExponentSlack = 1e-9;

std::vector<double> log_spaced(double lo_exp, double hi_exp, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * t));
  }
  return out;
}

bool convex_psi(const Generator& f, const Generator& g) {
  const PairMap psi = PairMap::psi_t(Conjugation(f, g), 0.5);
  return convexity_check(psi, Sampler{}).holds;
}

// Fitted coefficients carry rounding noise; ten digits is what the summary shows.
std::string coef(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string power_formula(double a, double b) { return "f = " + coef(a) + "·g^" + coef(b); }

}  // namespace

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::proportional:
      return "proportional";
    case Relation::affine:
      return "affine";
    case Relation::power:
      return "power";
    case Relation::none:
      return "none";
  }
  return "?";
}

const char* to_string(Condition c) noexcept {
  switch (c) {
    case Condition::thm_a_commute:
      return "THM-A-commute";
    case Condition::thm_b_commute:
      return "THM-B-commute";
    case Condition::l1:
      return "L1";
    case Condition::l2:
      return "L2";
    case Condition::p2p3:
      return "P2P3";
    case Condition::unclassified:
      return "UNCLASSIFIED";
  }
  return "?";
}

const char* to_string(Prediction p) noexcept {
  switch (p) {
    case Prediction::commute:
      return "commute";
    case Prediction::holds:
      return "holds";
    case Prediction::violated:
      return "violated";
    case Prediction::unknown:
      return "unknown";
  }
  return "?";
}

ProbeGrid ProbeGrid::for_domain(const Interval& domain, std::size_t n, double decades) {
  if (n < 2 || !(decades > 0.0)) throw ParameterError("probe grid needs at least two points");
  ProbeGrid grid;
  const double half = decades / 2.0;
  if (!domain.lo_finite() && !domain.hi_finite()) {
    const double span = half * std::log(10.0);
    for (std::size_t i = 0; i < n; ++i) {
      grid.points.push_back(-span + 2.0 * span * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  } else if (domain.lo_finite() && !domain.hi_finite()) {
    for (double off : log_spaced(-half, half, n)) grid.points.push_back(domain.lo + off);
  } else if (!domain.lo_finite()) {
    for (double off : log_spaced(-half, half, n)) grid.points.push_back(domain.hi - off);
  } else {
    const double width = domain.hi - domain.lo;
    const std::size_t left = n / 2;
    for (double off : log_spaced(-half, std::log10(0.5), left)) grid.points.push_back(domain.lo + width * off);
    for (double off : log_spaced(-half, std::log10(0.5), n - left)) grid.points.push_back(domain.hi - width * off);
  }
  std::sort(grid.points.begin(), grid.points.end());
  grid.points.erase(std::unique(grid.points.begin(), grid.points.end()), grid.points.end());
  std::erase_if(grid.points, [&](double x) { return !domain.contains(x); });
  return grid;
}

PowerFit fit_power(const Generator& f, const Generator& g, const ProbeGrid& grid) {
  std::vector<double> lf, lg;
  for (double x : grid.points) {
    const double a = f.log_eval(x);
    const double b = g.log_eval(x);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw ParameterError("power fit needs positive generator values; failed at " + format_short(x));
    }
    lf.push_back(a);
    lg.push_back(b);
  }
  const double n = static_cast<double>(lf.size());
  if (lf.size() < 2) throw ParameterError("power fit needs at least two probe points");
  double mg = 0, mf = 0;
  for (std::size_t i = 0; i < lf.size(); ++i) {
    mg += lg[i];
    mf += lf[i];
  }
  mg /= n;
  mf /= n;
  double sgg = 0, sgf = 0;
  for (std::size_t i = 0; i < lf.size(); ++i) {
    sgg += (lg[i] - mg) * (lg[i] - mg);
    sgf += (lg[i] - mg) * (lf[i] - mf);
  }
  if (!(sgg > 0.0)) throw ParameterError("power fit: g is constant on the probe grid");
  const double b = sgf / sgg;
  const double log_a = mf - b * mg;
  double residual = 0.0;
  for (std::size_t i = 0; i < lf.size(); ++i) {
    residual = std::max(residual, std::abs(lf[i] - log_a - b * lg[i]));
  }
  return {std::exp(log_a), b, residual};
}

AffineFit fit_affine(const Generator& f, const Generator& g, const ProbeGrid& grid) {
  std::vector<double> vf, vg;
  for (double x : grid.points) {
    const double a = f.eval(x);
    const double b = g.eval(x);
    // overflowed probes carry no information about the relation
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    vf.push_back(a);
    vg.push_back(b);
  }
  if (vf.size() < 2) throw ParameterError("affine fit needs at least two probe points");
  const double n = static_cast<double>(vf.size());
  double mg = 0, mf = 0;
  for (std::size_t i = 0; i < vf.size(); ++i) {
    mg += vg[i];
    mf += vf[i];
  }
  mg /= n;
  mf /= n;
  double sgg = 0, sgf = 0;
  for (std::size_t i = 0; i < vf.size(); ++i) {
    sgg += (vg[i] - mg) * (vg[i] - mg);
    sgf += (vg[i] - mg) * (vf[i] - mf);
  }
  if (!(sgg > 0.0)) throw ParameterError("affine fit: g is constant on the probe grid");
  AffineFit fit{};
  fit.a = sgf / sgg;
  fit.b = mf - fit.a * mg;
  for (std::size_t i = 0; i < vf.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(vf[i] - fit.a * vg[i] - fit.b) / std::max(1.0, std::abs(vf[i])));
  }

  // f/g constant in log terms, with a common sign.
  fit.proportional = true;
  double sum_log = 0.0;
  const bool negative = (vf[0] < 0.0) != (vg[0] < 0.0);
  std::vector<double> lr;
  for (std::size_t i = 0; i < vf.size(); ++i) {
    const double r = vf[i] / vg[i];
    if (!std::isfinite(r) || r == 0.0 || (r < 0.0) != negative) {
      fit.proportional = false;
      break;
    }
    lr.push_back(std::log(std::abs(r)));
    sum_log += lr.back();
  }
  if (fit.proportional) {
    const double mean = sum_log / static_cast<double>(lr.size());
    for (double l : lr) {
      if (std::abs(l - mean) > kRelationTolerance) fit.proportional = false;
    }
    fit.ratio = (negative ? -1.0 : 1.0) * std::exp(mean);
  }
  return fit;
}

std::string Classification::summary() const {
  std::string rel;
  switch (relation) {
    case Relation::proportional:
      rel = "f = " + coef(a) + "·g";
      break;
    case Relation::affine:
      rel = "f = " + coef(a) + "·g + " + coef(b);
      break;
    case Relation::power:
      rel = power_formula(a, b);
      break;
    case Relation::none:
      rel = "no catalog relation";
      break;
  }
  return std::string(to_string(condition)) + " (" + citation + "): " + rel + "; predicted " +
         to_string(predicted);
}

Classification classify_pair(const Generator& f, const Generator& g, const MeasureSpace& X,
                             const MeasureSpace& Y) {
  Classification c;
  c.dir_f = f.direction();
  c.dir_g = g.direction();

  const Interval domain = intersect(f.domain(), g.domain());
  const ProbeGrid grid = ProbeGrid::for_domain(domain);
  const Admissibility ax = X.admissibility();
  const Admissibility ay = Y.admissibility();
  const bool non_degenerate = ax.non_degenerate && ay.non_degenerate;
  const bool probability = ax.probability && ay.probability;
  // Onto (0, inf) from the shared domain, not just from each generator's own.
  const bool onto = f.image_of(domain).is_positive_reals() && g.image_of(domain).is_positive_reals();
  const bool g_inc = g.increasing();
  const bool f_inc = f.increasing();

  std::optional<AffineFit> aff;
  try {
    aff = fit_affine(f, g, grid);
  } catch (const std::exception&) {
  }
  if (aff && aff->proportional) {
    c.relation = Relation::proportional;
    c.a = aff->ratio;
    c.b = 1.0;
    c.residual = aff->residual;
    c.condition = Condition::thm_b_commute;
    c.predicted = Prediction::commute;
    c.citation = "proportional generators give equal means on every space";
    return c;
  }

  std::optional<PowerFit> pow;
  try {
    pow = fit_power(f, g, grid);
  } catch (const std::exception&) {
  }

  if (aff && aff->residual <= kRelationTolerance) {
    c.relation = Relation::affine;
    c.a = aff->a;
    c.b = aff->b;
    c.residual = aff->residual;
    if (probability) {
      c.condition = Condition::thm_a_commute;
      c.predicted = Prediction::commute;
      c.citation = "affine generators on probability spaces commute";
      return c;
    }
  } else if (pow && pow->residual <= kRelationTolerance) {
    c.relation = Relation::power;
    c.a = pow->a;
    c.b = pow->b;
    c.residual = pow->residual;
  } else {
    c.relation = Relation::none;
    c.residual = pow ? pow->residual : (aff ? aff->residual : std::numeric_limits<double>::quiet_NaN());
  }

  if (!onto || !non_degenerate) {
    c.citation = "generators not onto (0, inf) or a degenerate space: no characterization applies";
    return c;
  }

  if (g_inc && !f_inc) {
    c.predicted = Prediction::violated;
    c.citation = "monotonicity gate: g increasing forces f increasing";
    return c;
  }

  const bool admissible = ax.thm1_admissible || ay.thm1_admissible;
  if (c.relation == Relation::power) {
    if (g_inc && c.b >= 1.0 - kExponentSlack) {
      c.condition = Condition::l1;
      c.predicted = Prediction::holds;
      c.citation = "power law, g increasing, b ≥ 1";
      return c;
    }
    if (!g_inc && c.b <= 1.0 + kExponentSlack && std::abs(c.b) > kExponentSlack) {
      c.condition = Condition::l2;
      c.predicted = Prediction::holds;
      c.citation = admissible ? "power law, g decreasing, nonzero b ≤ 1"
                              : "power law, g decreasing, nonzero b ≤ 1; L2 form outside the admissible spaces";
      return c;
    }
    if (admissible) {
      c.predicted = Prediction::violated;
      c.citation = "power law outside L1/L2 on a space with a set of mass in (0, 1) and total mass > 1";
      return c;
    }
  }

  if (g_inc) {
    if (probability) {
      if (convex_psi(f, g)) {
        c.condition = Condition::p2p3;
        c.predicted = Prediction::holds;
        c.citation = "probability spaces, f increasing, Psi_t convex";
      } else {
        c.predicted = Prediction::violated;
        c.citation = "probability spaces, Psi_t not convex";
      }
      return c;
    }
    if (X.total_mass() <= 1.0 + MeasureSpace::kProbabilityTolerance &&
        Y.total_mass() <= 1.0 + MeasureSpace::kProbabilityTolerance && convex_psi(f, g)) {
      c.condition = Condition::p2p3;
      c.predicted = Prediction::holds;
      c.citation = "total masses ≤ 1, f increasing, Psi_t convex";
      return c;
    }
  }
  c.citation = "no characterization matches; defer to search";
  return c;
}

std::string classification_csv_header() {
  return "relation,a,b,dir_f,dir_g,condition,predicted,residual,citation";
}

std::string classification_csv_row(const Classification& c) {
  return std::string(to_string(c.relation)) + "," + format_full(c.a) + "," + format_full(c.b) + "," +
         to_string(c.dir_f) + "," + to_string(c.dir_g) + "," + to_string(c.condition) + "," +
         to_string(c.predicted) + "," + format_full(c.residual) + "," + csv_field(c.citation);
}

std::string classification_json(const Classification& c) {
  nlohmann::ordered_json j;
  j["relation"] = to_string(c.relation);
  j["a"] = c.a;
  j["b"] = c.b;
  j["dir_f"] = to_string(c.dir_f);
  j["dir_g"] = to_string(c.dir_g);
  j["condition"] = to_string(c.condition);
  j["predicted"] = to_string(c.predicted);
  if (std::isfinite(c.residual)) {
    j["residual"] = c.residual;
  } else {
    j["residual"] = nullptr;
  }
  j["citation"] = c.citation;
  return j.dump();
}

}  // namespace qamlab
