#include <cmath>
#include <limits>
#include <ostream>

#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"
#include "qamlab/means.hpp"
#include "qamlab/rng.hpp"
#include "qamlab/search.hpp"

namespace qamlab {

std::string sweep_csv_header() {
  return "scenario_id,f_desc,g_desc,weights,classification,predicted,min_gap,witness_x,witness_y,"
         "witness_z,witness_w,trials,seed";
}

std::string sweep_csv_row(const SweepRow& row) {
  return csv_field(row.scenario_id) + "," + csv_field(row.f_desc) + "," + csv_field(row.g_desc) + "," +
         csv_field(row.weights) + "," + to_string(row.classification.condition) + "," +
         to_string(row.classification.predicted) + "," + format_full(row.min_gap) + "," +
         format_full(row.witness.x) + "," + format_full(row.witness.y) + "," + format_full(row.witness.z) +
         "," + format_full(row.witness.w) + "," + std::to_string(row.trials) + "," + std::to_string(row.seed);
}

std::vector<SweepRow> sweep(const std::vector<Scenario>& scenarios, std::ostream& out,
                            const SearchBudget& budget, const std::filesystem::path& base_dir) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  out << sweep_csv_header() << '\n';
  for (const Scenario& sc : scenarios) {
    const Generator f = parse_generator(sc.f_desc, base_dir);
    const Generator g = parse_generator(sc.g_desc, base_dir);
    const MeasureSpace X(sc.x_weights);
    const MeasureSpace Y(sc.y_weights);

    SweepRow row;
    row.scenario_id = sc.id;
    row.f_desc = sc.f_desc;
    row.g_desc = sc.g_desc;
    row.weights = "X=" + format_list(sc.x_weights) + " Y=" + format_list(sc.y_weights);
    row.classification = classify_pair(f, g, X, Y);
    row.trials = sc.trials;
    row.seed = sc.seed;
    row.min_gap = nan;
    row.witness = {nan, nan, nan, nan};

    const auto [a1, a2] = two_atom_split(X);
    const auto [b1, b2] = two_atom_split(Y);
    const Interval domain = intersect(f.domain(), g.domain());
    const Box box = sc.box.value_or(default_box(domain));
    for (std::size_t t = 0; t < sc.trials; ++t) {
      const SimpleFunction h = random_simple_function(domain, 2, 2, mix_seed(sc.seed, t), box);
      const GapReport r = four_point_gap(f, g, a1, a2, b1, b2, h(0, 0), h(0, 1), h(1, 0), h(1, 1));
      if (r.well_defined && (std::isnan(row.min_gap) || r.gap < row.min_gap)) {
        row.min_gap = r.gap;
        row.witness = {h(0, 0), h(0, 1), h(1, 0), h(1, 1)};
      }
    }

    row.search = violate_four_point(f, g, a1, a2, b1, b2, budget, sc.seed);
    if (!std::isnan(row.search.best_gap) && (std::isnan(row.min_gap) || row.search.best_gap < row.min_gap)) {
      row.min_gap = row.search.best_gap;
      row.witness = row.search.witness;
    }
    out << sweep_csv_row(row) << '\n';
    rows.push_back(std::move(row));
  }
  out.flush();
  return rows;
}

}  // namespace qamlab
