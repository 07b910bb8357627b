#include "qamlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qamlab/errors.hpp"

namespace qamlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw ParameterError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw ParameterError("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string_view strip_brackets(std::string_view s, char open, char close) {
  s = trim(s);
  if (!s.empty() && s.front() == open) {
    if (s.back() != close) throw ParameterError("unbalanced '" + std::string(1, open) + "'");
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

Box parse_box(std::string_view s) {
  const auto v = parse_real_list(s);
  if (v.size() != 2 || !(v[0] <= v[1])) throw ParameterError("box must be [lo, hi] with lo <= hi");
  return {v[0], v[1]};
}

// Settings shared by the top level and scenario sections.
struct Fields {
  std::optional<std::string> f, g;
  std::optional<std::vector<double>> x, y;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<Box> box;
};

bool apply_field(Fields& fl, std::string_view key, std::string_view value) {
  if (key == "f" || key == "f_desc") {
    fl.f = std::string(value);
  } else if (key == "g" || key == "g_desc") {
    fl.g = std::string(value);
  } else if (key == "space.X") {
    fl.x = parse_real_list(value);
  } else if (key == "space.Y") {
    fl.y = parse_real_list(value);
  } else if (key == "trials") {
    fl.trials = parse_count(value);
  } else if (key == "seed") {
    fl.seed = parse_count(value);
  } else if (key == "box") {
    fl.box = parse_box(value);
  } else {
    return false;
  }
  return true;
}

void apply_top(RunConfig& c, Fields& top, std::string_view key, std::string_view value) {
  if (apply_field(top, key, value)) return;
  if (key == "mode") {
    c.mode = parse_mode(value);
    if (!c.mode) throw ParameterError("unknown mode '" + std::string(value) + "'");
  } else if (key == "tolerance" || key == "tol") {
    c.tolerance = std::abs(parse_real(value));
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "h") {
    c.h = parse_grid(value);
  } else {
    throw ParameterError("unknown key '" + std::string(key) + "'");
  }
}

void apply_search(SearchBudget& b, std::string_view key, std::string_view value) {
  if (key == "starts") {
    b.starts = parse_count(value);
  } else if (key == "samples") {
    b.samples_per_start = parse_count(value);
  } else if (key == "refine") {
    b.refine_steps = parse_count(value);
  } else if (key == "decades") {
    b.decades = parse_real(value);
  } else if (key == "threads") {
    b.threads = parse_count(value);
  } else {
    throw ParameterError("unknown search key '" + std::string(key) + "'");
  }
}

struct PendingScenario {
  std::string id;
  Fields fields;
  std::size_t line;
};

void finish(RunConfig& c, const Fields& top, const std::vector<PendingScenario>& pending) {
  if (top.f) c.f_desc = *top.f;
  if (top.g) c.g_desc = *top.g;
  if (top.x) c.x_weights = *top.x;
  if (top.y) c.y_weights = *top.y;
  if (top.trials) c.trials = *top.trials;
  if (top.seed) c.seed = *top.seed;
  c.box = top.box;
  for (const auto& p : pending) {
    Scenario s;
    s.id = p.id;
    s.f_desc = p.fields.f.value_or(c.f_desc);
    s.g_desc = p.fields.g.value_or(c.g_desc);
    s.x_weights = p.fields.x.value_or(c.x_weights);
    s.y_weights = p.fields.y.value_or(c.y_weights);
    s.trials = p.fields.trials.value_or(top.trials.value_or(Scenario{}.trials));
    s.seed = p.fields.seed.value_or(c.seed);
    s.box = p.fields.box ? p.fields.box : top.box;
    if (s.f_desc.empty() || s.g_desc.empty()) throw ConfigError("scenario '" + s.id + "' needs f and g", p.line);
    if (s.x_weights.empty() || s.y_weights.empty()) {
      throw ConfigError("scenario '" + s.id + "' needs space.X and space.Y", p.line);
    }
    c.scenarios.push_back(std::move(s));
  }
}

RunConfig parse_ini(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  Fields top;
  std::vector<PendingScenario> pending;
  enum class Section { top, search, scenario } section = Section::top;
  std::map<std::string, std::size_t> seen;
  std::string scope;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ParameterError("unterminated section header");
        const std::string_view name = trim(line.substr(1, line.size() - 2));
        if (name == "search") {
          section = Section::search;
        } else if (name.starts_with("scenario")) {
          const std::string_view id = trim(name.substr(8));
          if (id.empty()) throw ParameterError("scenario section needs an id: [scenario NAME]");
          for (const auto& p : pending) {
            if (p.id == id) throw ParameterError("duplicate scenario '" + std::string(id) + "'");
          }
          pending.push_back({std::string(id), {}, line_no});
          section = Section::scenario;
        } else {
          throw ParameterError("unknown section '" + std::string(name) + "'");
        }
        scope = std::string(name);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParameterError("expected key = value");
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParameterError("empty key");
      if (!seen.emplace(scope + "\n" + std::string(key), line_no).second) {
        throw ParameterError("duplicate key '" + std::string(key) + "'");
      }
      switch (section) {
        case Section::top:
          apply_top(c, top, key, value);
          break;
        case Section::search:
          apply_search(c.budget, key, value);
          break;
        case Section::scenario:
          if (!apply_field(pending.back().fields, key, value)) {
            throw ParameterError("unknown scenario key '" + std::string(key) + "'");
          }
          break;
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  finish(c, top, pending);
  return c;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

RunConfig parse_json(std::string_view text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ConfigError(e.what(), line);
  }
  if (!j.is_object()) throw ConfigError("JSON config must be an object", 1);

  RunConfig c;
  c.base_dir = base_dir;
  Fields top;
  std::vector<PendingScenario> pending;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "space") {
        for (const auto& [axis, w] : value.items()) apply_top(c, top, "space." + axis, w.dump());
      } else if (key == "search") {
        for (const auto& [k, v] : value.items()) apply_search(c.budget, k, json_scalar(v));
      } else if (key == "scenarios") {
        for (const auto& s : value) {
          PendingScenario p{s.at("id").get<std::string>(), {}, 0};
          for (const auto& [k, v] : s.items()) {
            if (k == "id") continue;
            if (k == "space") {
              for (const auto& [axis, w] : v.items()) apply_field(p.fields, "space." + axis, w.dump());
            } else if (!apply_field(p.fields, k, json_scalar(v))) {
              throw ParameterError("unknown scenario key '" + k + "'");
            }
          }
          pending.push_back(std::move(p));
        }
      } else {
        apply_top(c, top, key, json_scalar(value));
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  finish(c, top, pending);
  return c;
}

}  // namespace

const char* to_string(Mode m) noexcept {
  switch (m) {
    case Mode::verify:
      return "verify";
    case Mode::classify:
      return "classify";
    case Mode::search:
      return "search";
    case Mode::sweep:
      return "sweep";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) noexcept {
  for (Mode m : {Mode::verify, Mode::classify, Mode::search, Mode::sweep}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

std::vector<double> parse_real_list(std::string_view s) {
  s = strip_brackets(s, '[', ']');
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(parse_real(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

GridSpec parse_grid(std::string_view s) {
  s = trim(s);
  if (s.starts_with("random")) {
    const auto args = parse_real_list(strip_brackets(trim(s.substr(6)), '(', ')'));
    if (args.size() != 5) throw ParameterError("random(m, n, seed, lo, hi) takes five arguments");
    for (std::size_t i = 0; i < 3; ++i) {
      if (args[i] < 0 || args[i] != std::floor(args[i])) {
        throw ParameterError("random(): m, n and seed must be non-negative integers");
      }
    }
    if (args[0] < 1 || args[1] < 1) throw ParameterError("random(): m and n must be positive");
    if (!(args[3] <= args[4])) throw ParameterError("random(): needs lo <= hi");
    return RandomGridSpec{static_cast<std::size_t>(args[0]), static_cast<std::size_t>(args[1]),
                          static_cast<std::uint64_t>(args[2]), Box{args[3], args[4]}};
  }
  const std::string_view inner = strip_brackets(s, '[', ']');
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    const auto open = inner.find('[', pos);
    if (open == std::string_view::npos) {
      if (!trim(inner.substr(pos)).empty()) throw ParameterError("grid rows must be bracketed");
      break;
    }
    if (!trim(inner.substr(pos, open - pos)).empty() && trim(inner.substr(pos, open - pos)) != ",") {
      throw ParameterError("unexpected text between grid rows");
    }
    const auto close = inner.find(']', open);
    if (close == std::string_view::npos) throw ParameterError("unbalanced '[' in grid");
    rows.push_back(parse_real_list(inner.substr(open + 1, close - open - 1)));
    pos = close + 1;
  }
  if (rows.empty()) throw ParameterError("empty grid");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size() || r.empty()) throw ParameterError("grid rows have different lengths");
  }
  return rows;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json(text, base_dir);
  return parse_ini(text, base_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace qamlab
