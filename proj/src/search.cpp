#include "qamlab/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qamlab/errors.hpp"
#include "qamlab/means.hpp"
#include "qamlab/parallel.hpp"
#include "qamlab/rng.hpp"

namespace qamlab {

namespace {

using Point = std::array<double, 4>;

// Maps a chart coordinate s in [-half, half] into the shared domain. Through g when g is onto
// (0, inf), so the generator values span the requested decades; otherwise through the domain.
class Chart {
 public:
  Chart(const Generator& f, const Generator& g, double decades)
      : g_(g), domain_(intersect(f.domain(), g.domain())), via_g_(g.image_of(domain_).is_positive_reals()) {
    half_ = decades / 2.0 * std::log(10.0);
  }

  double half() const noexcept { return half_; }

  // NaN when s lands outside the domain after rounding.
  double to_domain(double s) const {
    double x;
    if (via_g_) {
      try {
        x = g_.invert(std::exp(s));
      } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    } else if (domain_.lo_finite() && domain_.hi_finite()) {
      x = domain_.lo + (domain_.hi - domain_.lo) / (1.0 + std::exp(-s));
    } else if (domain_.lo_finite()) {
      x = domain_.lo + std::exp(s);
    } else if (domain_.hi_finite()) {
      x = domain_.hi - std::exp(s);
    } else {
      x = s;
    }
    return domain_.contains(x) ? x : std::numeric_limits<double>::quiet_NaN();
  }

 private:
  const Generator& g_;
  Interval domain_;
  bool via_g_;
  double half_;
};

struct StartResult {
  double gap = std::numeric_limits<double>::infinity();
  FourPoint witness{};
  std::size_t iterations = 0;
};

class Objective {
 public:
  Objective(const Generator& f, const Generator& g, double a1, double a2, double b1, double b2,
            const Chart& chart)
      : f_(f), g_(g), a1_(a1), a2_(a2), b1_(b1), b2_(b2), chart_(chart) {}

  // Gap at chart point s; +inf when the instance is not well defined.
  double operator()(const Point& s, FourPoint* at = nullptr) const {
    Point x;
    for (std::size_t k = 0; k < 4; ++k) {
      x[k] = chart_.to_domain(s[k]);
      if (std::isnan(x[k])) return std::numeric_limits<double>::infinity();
    }
    const GapReport r = four_point_gap(f_, g_, a1_, a2_, b1_, b2_, x[0], x[1], x[2], x[3]);
    if (!r.well_defined || !std::isfinite(r.gap)) return std::numeric_limits<double>::infinity();
    if (at) *at = {x[0], x[1], x[2], x[3]};
    return r.gap;
  }

 private:
  const Generator& f_;
  const Generator& g_;
  double a1_, a2_, b1_, b2_;
  const Chart& chart_;
};

StartResult run_start(const Objective& objective, const Chart& chart, const SearchBudget& budget,
                      std::uint64_t seed, std::size_t start) {
  Rng rng(seed, start);
  const double half = chart.half();
  StartResult out;
  Point best{};
  double best_gap = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < budget.samples_per_start; ++i) {
    Point s;
    for (double& c : s) {
      // Half the coordinates hug an end of the chart.
      if (rng.uniform() < 0.5) {
        const double u = rng.uniform();
        c = (rng.uniform() < 0.5 ? -1.0 : 1.0) * half * (1.0 - 0.2 * u * u);
      } else {
        c = rng.uniform(-half, half);
      }
    }
    const double v = objective(s);
    ++out.iterations;
    if (v < best_gap) {
      best_gap = v;
      best = s;
    }
  }
  if (!std::isfinite(best_gap)) return out;

  double step = half / 4.0;
  for (std::size_t it = 0; it < budget.refine_steps && step > 1e-12; ++it) {
    bool improved = false;
    for (std::size_t k = 0; k < 4; ++k) {
      for (double dir : {-1.0, 1.0}) {
        Point trial = best;
        trial[k] = std::clamp(trial[k] + dir * step, -half, half);
        const double v = objective(trial);
        ++out.iterations;
        if (v < best_gap) {
          best_gap = v;
          best = trial;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  out.gap = objective(best, &out.witness);
  return out;
}

}  // namespace

std::pair<double, double> two_atom_split(const MeasureSpace& space) {
  if (space.size() < 2) throw ParameterError("a four-point reduction needs at least two atoms");
  const std::uint32_t full = (std::uint32_t{1} << space.size()) - 1;
  const std::uint32_t a = space.thm1_split().value_or(1u);
  return {space.subset_mass(a), space.subset_mass(full ^ a)};
}

SearchResult violate_four_point(const Generator& f, const Generator& g, double a1, double a2,
                                double b1, double b2, const SearchBudget& budget,
                                std::uint64_t seed) {
  for (double w : {a1, a2, b1, b2}) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("four-point weights must be positive");
  }
  if (budget.starts == 0 || !(budget.decades > 0.0)) throw ParameterError("search budget is empty");
  const Chart chart(f, g, budget.decades);
  const Objective objective(f, g, a1, a2, b1, b2, chart);

  std::vector<StartResult> starts(budget.starts);
  const std::size_t threads = budget.threads ? budget.threads : thread_budget();
  parallel_for(starts.size(), threads,
               [&](std::size_t i) { starts[i] = run_start(objective, chart, budget, seed, i); });

  SearchResult result{std::numeric_limits<double>::infinity(), {}, 0, false};
  for (const StartResult& s : starts) {
    result.iterations += s.iterations;
    if (s.gap < result.best_gap) {
      result.best_gap = s.gap;
      result.witness = s.witness;
    }
  }
  if (!std::isfinite(result.best_gap)) {
    result.best_gap = std::numeric_limits<double>::quiet_NaN();
    result.witness = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
  result.converged = result.best_gap < kViolationThreshold;
  return result;
}

}  // namespace qamlab
