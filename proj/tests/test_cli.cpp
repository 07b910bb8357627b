#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qamlab/cli.hpp"
#include "qamlab/errors.hpp"
#include "qamlab/format.hpp"

using namespace qamlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_text(const std::string& text) {
  std::ostringstream out, err;
  RunConfig c;
  try {
    c = parse_config(text);
  } catch (const ConfigError& e) {
    return {cli::kExitError, "", e.what()};
  }
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("key=value configs") {
  const RunConfig c = parse_config(R"(# comment
mode = sweep
f = power:2
g = recip
space.X = [0.5, 0.7]
space.Y = [1, 1]
trials = 50
seed = 9
tolerance = 1e-7
out = result.csv
h = random(2, 2, 4, 0.1, 10)
box = [0.01, 100]

[search]
starts = 4
samples = 100
refine = 10
decades = 8
threads = 2

[scenario one]
f = apower:1,0.5
trials = 20

[scenario two]
space.X = [0.2, 0.3]
seed = 3
)");
  CHECK(c.mode == Mode::sweep);
  CHECK(c.f_desc == "power:2");
  CHECK(c.g_desc == "recip");
  CHECK(c.x_weights == std::vector<double>{0.5, 0.7});
  CHECK(c.trials == 50);
  CHECK(c.seed == 9);
  CHECK(c.tolerance == 1e-7);
  CHECK(c.out == "result.csv");
  REQUIRE(c.h.has_value());
  const auto& spec = std::get<RandomGridSpec>(*c.h);
  CHECK(spec.rows == 2);
  CHECK(spec.seed == 4);
  CHECK(spec.box.hi == 10);
  CHECK(c.box->lo == 0.01);
  CHECK(c.budget.starts == 4);
  CHECK(c.budget.samples_per_start == 100);
  CHECK(c.budget.refine_steps == 10);
  CHECK(c.budget.decades == 8);
  CHECK(c.budget.threads == 2);
  REQUIRE(c.scenarios.size() == 2);
  CHECK(c.scenarios[0].id == "one");
  CHECK(c.scenarios[0].f_desc == "apower:1,0.5");
  CHECK(c.scenarios[0].g_desc == "recip");
  CHECK(c.scenarios[0].trials == 20);
  CHECK(c.scenarios[0].seed == 9);
  CHECK(c.scenarios[1].x_weights == std::vector<double>{0.2, 0.3});
  CHECK(c.scenarios[1].y_weights == std::vector<double>{1, 1});
  CHECK(c.scenarios[1].trials == 50);
  CHECK(c.scenarios[1].seed == 3);
}

TEST_CASE("JSON configs carry the same keys") {
  const RunConfig c = parse_config(R"({
  "mode": "verify",
  "f": "power:2",
  "g": "power:1",
  "space": {"X": [0.5, 0.5], "Y": [0.25, 0.75]},
  "trials": 12,
  "h": [[1, 2], [3, 4]],
  "search": {"starts": 3},
  "scenarios": [{"id": "a", "f": "power:3", "space": {"X": [1, 2]}}]
})");
  CHECK(c.mode == Mode::verify);
  CHECK(c.y_weights == std::vector<double>{0.25, 0.75});
  CHECK(c.trials == 12);
  CHECK(std::get<std::vector<std::vector<double>>>(*c.h)[1][0] == 3);
  CHECK(c.budget.starts == 3);
  REQUIRE(c.scenarios.size() == 1);
  CHECK(c.scenarios[0].f_desc == "power:3");
  CHECK(c.scenarios[0].g_desc == "power:1");
  CHECK(c.scenarios[0].x_weights == std::vector<double>{1, 2});
}

TEST_CASE("config errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("f = power:2\n\nbogus = 1\n") == 3);
  CHECK(line_of("trials = many\n") == 1);
  CHECK(line_of("f = a\nf = b\n") == 2);
  CHECK(line_of("mode = fly\n") == 1);
  CHECK(line_of("[nowhere]\n") == 1);
  CHECK(line_of("f = power:1\n[scenario]\n") == 2);
  CHECK(line_of("space.X = [1, 2\n") == 1);
  CHECK(line_of("just text\n") == 1);
  CHECK(line_of("[scenario s]\nf = power:1\n") == 1);
  CHECK(line_of("{\n  \"f\": \"power:1\",\n  oops\n}") == 3);
  try {
    parse_config("x\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).starts_with("line 1: "));
  }
}

TEST_CASE("lists and grids") {
  CHECK(parse_real_list("[1, 2.5, -3e2]") == std::vector<double>{1, 2.5, -300});
  CHECK(parse_real_list("4,5") == std::vector<double>{4, 5});
  CHECK(parse_real_list("[]").empty());
  CHECK_THROWS(parse_real_list("[1,,2]"));
  const auto g = std::get<std::vector<std::vector<double>>>(parse_grid("[[1,2],[3,4]]"));
  CHECK(g == std::vector<std::vector<double>>{{1, 2}, {3, 4}});
  CHECK_THROWS(parse_grid("[[1,2],[3]]"));
  CHECK_THROWS(parse_grid("random(2, 2, 1)"));
  CHECK_THROWS(parse_grid("random(0, 2, 1, 1, 2)"));
  const auto r = std::get<RandomGridSpec>(parse_grid("random(3, 4, 7, 0.5, 2)"));
  CHECK(r.cols == 4);
  CHECK(r.box.lo == 0.5);
}

TEST_CASE("verify") {
  const Run ok = run_text("mode = verify\nf = power:1\ng = recip\nspace.X = [1, 1]\nspace.Y = [1, 1]\ntrials = 2000\n");
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.find("min gap:") != std::string::npos);
  CHECK(ok.out.find("mean gap:") != std::string::npos);

  const Run bad = run_text("mode = verify\nf = power:0.5\ng = power:1\nspace.X = [0.5, 0.7]\nspace.Y = [0.5, 0.5]\n");
  CHECK(bad.code == cli::kExitViolation);
  CHECK(bad.out.find("VIOLATION") != std::string::npos);
  CHECK(bad.out.find("  [") != std::string::npos);

  const Run broken = run_text("mode = verify\nf = power:\ng = power:1\nspace.X = [0.5, 0.7]\nspace.Y = [0.5, 0.5]\n");
  CHECK(broken.code == cli::kExitError);
  CHECK(broken.err.find("malformed generator") != std::string::npos);

  const Run grid = run_text(
      "mode = verify\nf = power:2\ng = power:1\nspace.X = [0.5, 0.5]\nspace.Y = [0.5, 0.5]\nh = [[1,2],[3,4]]\ntrials = 0\n");
  CHECK(grid.code == cli::kExitOk);
  CHECK(grid.out.find("0.0065904152") != std::string::npos);

  CHECK(run_text("f = power:1\ng = power:1\nspace.X = [1]\nspace.Y = [1]\n").code == cli::kExitError);
  CHECK(run_text("mode = verify\ng = power:1\n").code == cli::kExitError);
}

TEST_CASE("classify") {
  const Run l1 = run_text("mode = classify\nf = apower:2,3\ng = power:1\nspace.X = [0.5, 0.7]\nspace.Y = [0.5, 0.5]\n");
  CHECK(l1.code == cli::kExitOk);
  CHECK(l1.out.find("L1 (") != std::string::npos);
  CHECK(l1.out.find("f = 2·g^3") != std::string::npos);
  CHECK(l1.out.find("b ≥ 1") != std::string::npos);

  const Run a = run_text("mode = classify\nf = affine:3,2\ng = power:1\nspace.X = [0.5, 0.5]\nspace.Y = [0.2, 0.8]\n");
  CHECK(a.out.find("THM-A-commute") != std::string::npos);

  const Run rem = run_text("mode = classify\nf = power:1\ng = recip\nspace.X = [1, 1]\nspace.Y = [1, 1]\n");
  CHECK(rem.out.find("power,1,-1,increasing,decreasing,L2") != std::string::npos);
  CHECK(rem.out.find("L2 form") != std::string::npos);
}

TEST_CASE("search") {
  const Run prop = run_text(
      "mode = search\nf = apower:3,1\ng = power:1\nspace.X = [0.5, 0.7]\nspace.Y = [0.5, 0.5]\n[search]\nsamples = 500\n");
  CHECK(prop.code == cli::kExitOk);
  CHECK(prop.out.find("no violation found") != std::string::npos);
  const Run v = run_text(
      "mode = search\nf = power:0.5\ng = power:1\nspace.X = [0.5, 0.7]\nspace.Y = [0.5, 0.5]\n[search]\nsamples = 500\n");
  CHECK(v.code == cli::kExitViolation);
  CHECK(v.out.find("violation found") != std::string::npos);
}

TEST_CASE("sweep") {
  const Run empty = run_text("mode = sweep\n");
  CHECK(empty.code == cli::kExitOk);
  CHECK(empty.out == sweep_csv_header() + "\n");

  const auto path = std::filesystem::temp_directory_path() / "qamlab_cli_sweep.csv";
  const Run file = run_text("mode = sweep\nout = " + path.string() +
                            "\nf = power:2\ng = power:1\nspace.X = [0.5, 0.7]\nspace.Y = [0.5, 0.5]\ntrials = 50\n"
                            "[search]\nsamples = 200\n[scenario a]\n[scenario b]\nf = power:0.5\n");
  CHECK(file.code == cli::kExitOk);
  CHECK(file.out.find("2 scenario(s) written") != std::string::npos);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().starts_with(sweep_csv_header() + "\na,power:2,"));
  CHECK(ss.str().find("\nb,power:0.5,") != std::string::npos);
}

TEST_CASE("printed numbers round-trip at full precision") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0065929363152700135, 1e-300}) {
    CHECK(std::strtod(format_full(x).c_str(), nullptr) == x);
    CHECK(std::strtod(format_short(x).c_str(), nullptr) == x);
  }
  CHECK(format_short(0.5) == "0.5");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("plain") == "plain");
}
