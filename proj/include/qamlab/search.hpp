#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qamlab/classify.hpp"
#include "qamlab/generator.hpp"
#include "qamlab/measure.hpp"

namespace qamlab {

/// A gap below this is reported as a violation.
inline constexpr double kViolationThreshold = -1e-6;
/// A gap at or above this counts as satisfying the inequality.
inline constexpr double kVerificationTolerance = -1e-9;

struct SearchBudget {
  std::size_t starts = 16;
  std::size_t samples_per_start = 10'000;
  std::size_t refine_steps = 200;
  /// Decades spanned by the sampled generator values.
  double decades = 12.0;
  /// Worker threads; 0 means thread_budget().
  std::size_t threads = 0;
};

struct FourPoint {
  double x;
  double y;
  double z;
  double w;
};

struct SearchResult {
  double best_gap;
  FourPoint witness;
  std::size_t iterations;
  /// A gap below kViolationThreshold was found.
  bool converged;
};

/// Minimizes four_point_gap over (x, y, z, w): seeded multi-start sampling in log
/// coordinates (biased toward the extremes, where violations live) followed by
/// coordinate descent from each start's best point. Starts are independent; the merge
/// keeps the minimum with ties going to the lower start index.
SearchResult violate_four_point(const Generator& f, const Generator& g, double a1, double a2,
                                double b1, double b2, const SearchBudget& budget,
                                std::uint64_t seed);

/// Masses (mass(A), mass(X \ A)) of the set A that reduces a space to two atoms: a set
/// with 0 < mass(A) < 1 < total mass when one exists, otherwise the first atom.
/// Requires at least two atoms.
std::pair<double, double> two_atom_split(const MeasureSpace& space);

/// One row of a sweep.
struct Scenario {
  std::string id;
  std::string f_desc;
  std::string g_desc;
  std::vector<double> x_weights;
  std::vector<double> y_weights;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<Box> box;
};

struct SweepRow {
  std::string scenario_id;
  std::string f_desc;
  std::string g_desc;
  std::string weights;
  Classification classification;
  double min_gap;
  FourPoint witness;
  std::size_t trials;
  std::uint64_t seed;
  SearchResult search;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

/// Classifies each scenario, samples `trials` four-point instances, runs the search, and
/// writes one CSV row per scenario (header first) to `out`.
std::vector<SweepRow> sweep(const std::vector<Scenario>& scenarios, std::ostream& out,
                            const SearchBudget& budget = {},
                            const std::filesystem::path& base_dir = {});

}  // namespace qamlab
