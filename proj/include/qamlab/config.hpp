#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qamlab/measure.hpp"
#include "qamlab/search.hpp"

namespace qamlab {

enum class Mode { verify, classify, search, sweep };

const char* to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

/// `random(m, n, seed, lo, hi)` in a config.
struct RandomGridSpec {
  std::size_t rows;
  std::size_t cols;
  std::uint64_t seed;
  Box box;
};

using GridSpec = std::variant<std::vector<std::vector<double>>, RandomGridSpec>;

struct RunConfig {
  std::string f_desc;
  std::string g_desc;
  std::vector<double> x_weights;
  std::vector<double> y_weights;
  std::optional<Mode> mode;
  std::size_t trials = 10'000;
  std::uint64_t seed = 1;
  /// verify passes when min gap >= -tolerance.
  double tolerance = 1e-9;
  std::string out;
  std::optional<GridSpec> h;
  std::optional<Box> box;
  std::vector<Scenario> scenarios;
  SearchBudget budget;
  /// Directory relative table paths resolve against.
  std::filesystem::path base_dir;
};

/// Key=value text with [sections], or JSON with the same keys when the text starts with '{'.
/// Errors carry the 1-based line of the offending entry.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Parses "[1, 2.5, 3]" (brackets optional).
std::vector<double> parse_real_list(std::string_view s);
/// Parses "[[1,2],[3,4]]" or "random(m, n, seed, lo, hi)".
GridSpec parse_grid(std::string_view s);

}  // namespace qamlab
