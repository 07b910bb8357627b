#include <doctest.h>

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qamlab/classify.hpp"
#include "qamlab/means.hpp"
#include "qamlab/rng.hpp"
#include "qamlab/search.hpp"

using namespace qamlab;

namespace {

const ProbeGrid kGrid = ProbeGrid::for_domain(Interval::positive_reals());

Generator em1() { return Generator::scaled_power(Generator::exponential(1), 1, 1, -1); }

std::vector<double> random_weights(Rng& rng, std::size_t n, double total) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.uniform(0.1, 1.0);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x *= total / s;
  return w;
}

}  // namespace

TEST_CASE("probe grids") {
  CHECK(kGrid.points.size() == ProbeGrid::kDefaultPoints);
  CHECK(kGrid.points.front() == doctest::Approx(1e-4));
  CHECK(kGrid.points.back() == doctest::Approx(1e4));
  const ProbeGrid line = ProbeGrid::for_domain(Interval::reals());
  CHECK(line.points.front() == doctest::Approx(-std::log(1e4)));
  const ProbeGrid box = ProbeGrid::for_domain(Interval(0, 10));
  for (double x : box.points) CHECK(Interval(0, 10).contains(x));
  CHECK(box.points.size() > 100);
  CHECK_THROWS(ProbeGrid::for_domain(Interval::positive_reals(), 1));
}

TEST_CASE("power fits") {
  const PowerFit a = fit_power(Generator::scaled_power(Generator::identity(), 2, 3), Generator::identity(), kGrid);
  CHECK(a.a == doctest::Approx(2).epsilon(1e-10));
  CHECK(a.b == doctest::Approx(3).epsilon(1e-10));
  CHECK(a.residual <= 1e-10);
  const PowerFit same = fit_power(Generator::power(3), Generator::power(3), kGrid);
  CHECK(same.a == doctest::Approx(1));
  CHECK(same.b == doctest::Approx(1));
  const PowerFit rem = fit_power(Generator::identity(), Generator::reciprocal(), kGrid);
  CHECK(rem.a == doctest::Approx(1));
  CHECK(rem.b == doctest::Approx(-1));
  CHECK_THROWS(fit_power(Generator::affine(1, -3), Generator::identity(), kGrid));
}

TEST_CASE("power fit recovers constructed parameters") {
  const ProbeGrid line = ProbeGrid::for_domain(Interval::reals());
  for (double a : {0.25, 1.0, 7.0}) {
    for (double b : {-2.0, -0.5, 0.3, 1.0, 2.5}) {
      for (const Generator& g : {Generator::identity(), Generator::power(3), Generator::reciprocal()}) {
        const PowerFit fit = fit_power(Generator::scaled_power(g, a, b), g, kGrid);
        CHECK(std::abs(fit.a - a) <= 1e-10 * a);
        CHECK(std::abs(fit.b - b) <= 1e-10);
      }
      const Generator e = Generator::exponential(1);
      const PowerFit fit = fit_power(Generator::scaled_power(e, a, b), e, line);
      CHECK(std::abs(fit.a - a) <= 1e-10 * a);
      CHECK(std::abs(fit.b - b) <= 1e-10);
    }
  }
}

TEST_CASE("affine fits") {
  const AffineFit a = fit_affine(Generator::affine(3, 2), Generator::identity(), kGrid);
  CHECK(a.a == doctest::Approx(3));
  CHECK(a.b == doctest::Approx(2));
  CHECK(a.residual <= 1e-8);
  CHECK_FALSE(a.proportional);
  const AffineFit p = fit_affine(Generator::scaled_power(Generator::power(2), 5, 1), Generator::power(2), kGrid);
  CHECK(p.proportional);
  CHECK(p.ratio == doctest::Approx(5));
  CHECK(std::abs(p.b) <= 1e-6);
  const AffineFit q = fit_affine(Generator::power(2), Generator::identity(), kGrid);
  CHECK(q.residual > 1.0);
  CHECK_FALSE(q.proportional);
}

TEST_CASE("classification examples") {
  const Generator id = Generator::identity();
  const Classification l1 = classify_pair(Generator::power(3), id, MeasureSpace({0.5, 0.7}), MeasureSpace({0.3, 0.4}));
  CHECK(l1.relation == Relation::power);
  CHECK(l1.condition == Condition::l1);
  CHECK(l1.predicted == Prediction::holds);
  CHECK(l1.b == doctest::Approx(3));

  const Classification rem = classify_pair(id, Generator::reciprocal(), MeasureSpace({1, 1}), MeasureSpace({1, 1}));
  CHECK(rem.relation == Relation::power);
  CHECK(rem.a == doctest::Approx(1));
  CHECK(rem.b == doctest::Approx(-1));
  CHECK(rem.dir_g == Direction::decreasing);
  CHECK(rem.condition == Condition::l2);

  const Classification half =
      classify_pair(Generator::power(0.5), id, MeasureSpace({0.5, 0.7}), MeasureSpace({0.5, 0.5}));
  CHECK(half.relation == Relation::power);
  CHECK(half.condition == Condition::unclassified);
  CHECK(half.predicted == Prediction::violated);

  const Classification prop =
      classify_pair(Generator::scaled_power(id, 5, 1), id, MeasureSpace({0.5, 0.7}), MeasureSpace({2}));
  CHECK(prop.relation == Relation::proportional);
  CHECK(prop.condition == Condition::thm_b_commute);
  CHECK(prop.a == doctest::Approx(5));

  const Classification aff = classify_pair(Generator::affine(3, 2), id, MeasureSpace({0.4, 0.6}), MeasureSpace({0.5, 0.5}));
  CHECK(aff.relation == Relation::affine);
  CHECK(aff.condition == Condition::thm_a_commute);
  CHECK(aff.predicted == Prediction::commute);
  const Classification aff2 = classify_pair(Generator::affine(3, 2), id, MeasureSpace({0.4, 0.9}), MeasureSpace({0.5, 0.5}));
  CHECK(aff2.relation == Relation::affine);
  CHECK(aff2.condition == Condition::unclassified);
  CHECK(aff2.predicted == Prediction::unknown);
}

TEST_CASE("monotonicity gate") {
  const Classification c = classify_pair(Generator::exponential(-1), Generator::exponential(2),
                                         MeasureSpace({0.5, 0.5}), MeasureSpace({1, 3}));
  CHECK(c.predicted == Prediction::violated);
  CHECK(c.dir_f == Direction::decreasing);
  CHECK(c.dir_g == Direction::increasing);
}

TEST_CASE("probability spaces fall back to convexity of psi_t") {
  const MeasureSpace P({0.3, 0.7}), Q({0.5, 0.5});
  const Classification yes = classify_pair(em1(), Generator::identity(), P, Q);
  CHECK(yes.relation == Relation::none);
  CHECK(yes.condition == Condition::p2p3);
  CHECK(yes.predicted == Prediction::holds);
  const Classification no = classify_pair(Generator::identity(), em1(), P, Q);
  CHECK(no.condition == Condition::unclassified);
  CHECK(no.predicted == Prediction::violated);
  const Classification small = classify_pair(em1(), Generator::identity(), MeasureSpace({0.3, 0.4}), Q);
  CHECK(small.condition == Condition::p2p3);
  const Classification big = classify_pair(em1(), Generator::identity(), MeasureSpace({0.3, 2}), MeasureSpace({1, 1}));
  CHECK(big.condition == Condition::unclassified);
  CHECK(big.predicted == Prediction::unknown);
}

TEST_CASE("positive predictions hold on random instances") {
  struct Case {
    Generator f;
    Generator g;
    bool probability;
    Condition expect;
    std::optional<Box> box = std::nullopt;
  };
  const Generator id = Generator::identity();
  const std::vector<Case> cases{
      {Generator::scaled_power(id, 2, 3), id, false, Condition::l1},
      {Generator::scaled_power(Generator::exponential(1), 0.5, 2), Generator::exponential(1), false, Condition::l1},
      {Generator::scaled_power(Generator::power(3), 7, 1), Generator::power(3), false, Condition::thm_b_commute},
      {Generator::affine(-2, 1), id, true, Condition::thm_a_commute},
      {em1(), id, true, Condition::p2p3, Box{1e-3, 6.9}},
      {id, Generator::reciprocal(), false, Condition::l2},
  };
  Rng rng(41);
  for (const Case& c : cases) {
    const MeasureSpace X(c.probability ? std::vector<double>{0.3, 0.7} : std::vector<double>{0.5, 0.7});
    const MeasureSpace Y(c.probability ? std::vector<double>{0.6, 0.4} : std::vector<double>{0.3, 0.4, 0.9});
    const Classification cl = classify_pair(c.f, c.g, X, Y);
    CAPTURE(cl.summary());
    REQUIRE(cl.condition == c.expect);
    const Interval domain = intersect(c.f.domain(), c.g.domain());
    for (int t = 0; t < 10000; ++t) {
      const auto h = random_simple_function(domain, X.size(), Y.size(), rng.bits(), c.box.value_or(default_box(domain)));
      const GapReport r = gap(c.f, c.g, X, Y, h);
      REQUIRE(r.well_defined);
      if (cl.predicted == Prediction::commute) {
        CHECK(std::abs(r.gap) <= 1e-9);
      } else {
        CHECK(r.gap >= -1e-9);
      }
    }
  }
}

TEST_CASE("negative predictions are witnessed by the search") {
  const Generator id = Generator::identity();
  struct Case {
    Generator f;
    Generator g;
    std::vector<double> x, y;
  };
  const std::vector<Case> cases{
      {Generator::power(0.5), id, {0.5, 0.7}, {0.5, 0.5}},
      {Generator::scaled_power(Generator::exponential(1), 1, 0.7), Generator::exponential(1), {0.5, 0.5}, {0.2, 1.1}},
      {Generator::power(-1), id, {0.5, 0.7}, {1, 1}},
      {Generator::scaled_power(Generator::reciprocal(), 1, 2), Generator::reciprocal(), {0.5, 0.7}, {0.5, 0.5}},
      {id, em1(), {0.3, 0.7}, {0.5, 0.5}},
  };
  SearchBudget budget;
  budget.samples_per_start = 2000;
  for (const Case& c : cases) {
    const MeasureSpace X(c.x), Y(c.y);
    const Classification cl = classify_pair(c.f, c.g, X, Y);
    CAPTURE(cl.summary());
    REQUIRE(cl.predicted == Prediction::violated);
    const auto [a1, a2] = two_atom_split(X);
    const auto [b1, b2] = two_atom_split(Y);
    const SearchResult r = violate_four_point(c.f, c.g, a1, a2, b1, b2, budget, 5);
    CHECK(r.converged);
    CHECK(r.best_gap < kViolationThreshold);
  }
}

TEST_CASE("classification records") {
  const Classification c = classify_pair(Generator::scaled_power(Generator::identity(), 2, 3), Generator::identity(),
                                         MeasureSpace({0.5, 0.7}), MeasureSpace({0.5, 0.5}));
  CHECK(c.summary().starts_with("L1 ("));
  CHECK(c.summary().find("f = 2·g^3") != std::string::npos);
  CHECK(classification_csv_header() == "relation,a,b,dir_f,dir_g,condition,predicted,residual,citation");
  const std::string row = classification_csv_row(c);
  CHECK(row.starts_with("power,"));
  CHECK(row.find(",L1,holds,") != std::string::npos);
  const std::string json = classification_json(c);
  CHECK(json.find("\"condition\":\"L1\"") != std::string::npos);
  CHECK(json.find("\"relation\":\"power\"") != std::string::npos);
}
