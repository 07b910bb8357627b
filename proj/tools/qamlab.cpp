#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qamlab/cli.hpp"
#include "qamlab/errors.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> tol;
};

void add_flags(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "config file (key=value or JSON)")->required();
  app.add_option("--trials", o.trials, "random instances");
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--out", o.out, "output path for CSV");
  app.add_option("--tol", o.tol, "verify passes when min gap >= -tol");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral quasi-arithmetic mean lab"};
  app.require_subcommand(0, 1);
  Overrides top;
  app.add_option("--config", top.config, "config file; its mode picks the command");
  app.add_option("--trials", top.trials, "random instances");
  app.add_option("--seed", top.seed, "RNG seed");
  app.add_option("--out", top.out, "output path for CSV");
  app.add_option("--tol", top.tol, "verify passes when min gap >= -tol");

  Overrides sub;
  std::optional<qamlab::Mode> mode;
  for (qamlab::Mode m : {qamlab::Mode::verify, qamlab::Mode::classify, qamlab::Mode::search, qamlab::Mode::sweep}) {
    CLI::App* cmd = app.add_subcommand(qamlab::to_string(m));
    add_flags(*cmd, sub);
    cmd->callback([&mode, m] { mode = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qamlab::cli::kExitError;
  }

  Overrides& o = mode ? sub : top;
  if (o.config.empty()) {
    std::cerr << "error: --config is required\n";
    return qamlab::cli::kExitError;
  }
  qamlab::RunConfig config;
  try {
    config = qamlab::load_config(o.config);
  } catch (const qamlab::ConfigError& e) {
    std::cerr << o.config << ": " << e.what() << '\n';
    return qamlab::cli::kExitError;
  }
  if (mode) config.mode = mode;
  if (o.trials) {
    config.trials = *o.trials;
    for (auto& s : config.scenarios) s.trials = *o.trials;
  }
  if (o.seed) {
    config.seed = *o.seed;
    for (auto& s : config.scenarios) s.seed = *o.seed;
  }
  if (o.out) config.out = *o.out;
  if (o.tol) config.tolerance = std::abs(*o.tol);
  return qamlab::cli::run(config, std::cout, std::cerr);
}
