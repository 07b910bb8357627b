#include "qamlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "qamlab/classify.hpp"
#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"
#include "qamlab/means.hpp"
#include "qamlab/rng.hpp"

namespace qamlab::cli {

namespace {

struct Pair {
  Generator f;
  Generator g;
  MeasureSpace X;
  MeasureSpace Y;
};

Pair load_pair(const RunConfig& c) {
  if (c.f_desc.empty() || c.g_desc.empty()) throw ConfigError("config needs f and g");
  if (c.x_weights.empty() || c.y_weights.empty()) throw ConfigError("config needs space.X and space.Y");
  return {parse_generator(c.f_desc, c.base_dir), parse_generator(c.g_desc, c.base_dir), MeasureSpace(c.x_weights),
          MeasureSpace(c.y_weights)};
}

void print_grid(std::ostream& out, const SimpleFunction& h) {
  for (std::size_t i = 0; i < h.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < h.cols(); ++j) out << (j ? ", " : "") << format_full(h(i, j));
    out << "]\n";
  }
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Pair p = load_pair(config);
    const Interval domain = intersect(p.f.domain(), p.g.domain());
    Box box = config.box.value_or(default_box(domain));

    std::vector<SimpleFunction> fixed;
    std::uint64_t seed = config.seed;
    if (config.h) {
      if (const auto* rows = std::get_if<std::vector<std::vector<double>>>(&*config.h)) {
        fixed.push_back(SimpleFunction::from_rows(*rows, domain));
      } else {
        const auto& spec = std::get<RandomGridSpec>(*config.h);
        if (spec.rows != p.X.size() || spec.cols != p.Y.size()) {
          throw ConfigError("random grid shape does not match the spaces");
        }
        box = spec.box;
        seed = spec.seed;
      }
    }

    double min_gap = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t defined = 0;
    std::size_t skipped = 0;
    std::optional<SimpleFunction> worst;
    auto visit = [&](const SimpleFunction& h) {
      const GapReport r = gap(p.f, p.g, p.X, p.Y, h);
      if (!r.well_defined) {
        ++skipped;
        return;
      }
      ++defined;
      sum += r.gap;
      if (r.gap < min_gap) {
        min_gap = r.gap;
        worst = h;
      }
    };
    for (const auto& h : fixed) visit(h);
    for (std::size_t t = 0; t < config.trials; ++t) {
      visit(random_simple_function(domain, p.X.size(), p.Y.size(), mix_seed(seed, t), box));
    }

    out << "f = " << p.f.describe() << ", g = " << p.g.describe() << '\n';
    out << "instances: " << defined << " well defined, " << skipped << " skipped\n";
    if (defined == 0) {
      out << "no well-defined instance\n";
      return kExitOk;
    }
    out << "min gap:  " << format_full(min_gap) << '\n';
    out << "mean gap: " << format_full(sum / static_cast<double>(defined)) << '\n';
    if (min_gap < -config.tolerance) {
      out << "VIOLATION (gap < -" << format_short(config.tolerance) << ") at h =\n";
      print_grid(out, *worst);
      return kExitViolation;
    }
    out << "inequality holds on all sampled instances\n";
    return kExitOk;
  });
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Pair p = load_pair(config);
    const Classification c = classify_pair(p.f, p.g, p.X, p.Y);
    out << c.summary() << '\n';
    out << classification_csv_header() << '\n' << classification_csv_row(c) << '\n';
    out << classification_json(c) << '\n';
    return kExitOk;
  });
}

int cmd_search(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Pair p = load_pair(config);
    const auto [a1, a2] = two_atom_split(p.X);
    const auto [b1, b2] = two_atom_split(p.Y);
    const SearchResult r = violate_four_point(p.f, p.g, a1, a2, b1, b2, config.budget, config.seed);
    out << "alpha = (" << format_full(a1) << ", " << format_full(a2) << "), beta = (" << format_full(b1) << ", "
        << format_full(b2) << ")\n";
    out << "best gap: " << format_full(r.best_gap) << " after " << r.iterations << " evaluations\n";
    out << "witness (x, y, z, w): " << format_full(r.witness.x) << ", " << format_full(r.witness.y) << ", "
        << format_full(r.witness.z) << ", " << format_full(r.witness.w) << '\n';
    if (r.converged) {
      out << "violation found\n";
      return kExitViolation;
    }
    out << "no violation found\n";
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.out.empty()) {
      sweep(config.scenarios, out, config.budget, config.base_dir);
      return kExitOk;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + config.out);
    const auto rows = sweep(config.scenarios, file, config.budget, config.base_dir);
    if (!file) throw ConfigError("write failed for " + config.out);
    for (const auto& row : rows) {
      out << row.scenario_id << ": " << to_string(row.classification.condition) << ", predicted "
          << to_string(row.classification.predicted) << ", min gap " << format_full(row.min_gap) << '\n';
    }
    out << rows.size() << " scenario(s) written to " << config.out << '\n';
    return kExitOk;
  });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.mode) {
    err << "error: no mode given (set mode = verify|classify|search|sweep or use a subcommand)\n";
    return kExitError;
  }
  switch (*config.mode) {
    case Mode::verify:
      return cmd_verify(config, out, err);
    case Mode::classify:
      return cmd_classify(config, out, err);
    case Mode::search:
      return cmd_search(config, out, err);
    case Mode::sweep:
      return cmd_sweep(config, out, err);
  }
  return kExitError;
}

}  // namespace qamlab::cli
