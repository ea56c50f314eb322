#include "fishvia/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace fishvia {

namespace {

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(fmt::format("'{}' is not a finite number", s));
  }
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument(fmt::format("'{}' is not an integer", s));
  }
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument(fmt::format("'{}' is not true or false", s));
}

std::optional<double> parse_auto(std::string_view s) {
  if (s == "auto") return std::nullopt;
  return parse_double(s);
}

std::string fmt_auto(const std::optional<double>& v) { return v ? fmt_double(*v) : "auto"; }

Maturity parse_maturity(std::string_view s) {
  if (s == "emerging") return Maturity::Emerging;
  if (s == "mature") return Maturity::Mature;
  throw std::invalid_argument(fmt::format("'{}' is not emerging or mature", s));
}

struct Field {
  std::string_view section;
  std::string_view key;
  std::function<std::string(const Scenario&)> get;
  std::function<void(Scenario&, std::string_view)> set;
};

#define FV_DOUBLE(SEC, KEY, MEMBER)                                             \
  Field {                                                                       \
    SEC, KEY, [](const Scenario& s) { return fmt_double(s.MEMBER); },           \
        [](Scenario& s, std::string_view v) { s.MEMBER = parse_double(v); }     \
  }
#define FV_STRING(SEC, KEY, MEMBER)                                             \
  Field {                                                                       \
    SEC, KEY, [](const Scenario& s) { return s.MEMBER; },                       \
        [](Scenario& s, std::string_view v) { s.MEMBER = std::string(v); }      \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      FV_DOUBLE("econ", "alpha1", econ.alpha1),
      FV_DOUBLE("econ", "alpha2", econ.alpha2),
      FV_DOUBLE("econ", "beta1", econ.beta1),
      FV_DOUBLE("econ", "beta2", econ.beta2),
      FV_DOUBLE("econ", "kappa1", econ.kappa1),
      FV_DOUBLE("econ", "kappa2", econ.kappa2),
      FV_DOUBLE("econ", "price", econ.price),
      Field{"recruitment", "model", [](const Scenario&) { return std::string("logistic"); },
            [](Scenario&, std::string_view v) {
              if (v != "logistic") {
                throw std::invalid_argument(fmt::format("'{}' is not a supported model (logistic)", v));
              }
            }},
      FV_DOUBLE("recruitment", "growth", growth),
      FV_DOUBLE("recruitment", "capacity", capacity),
      FV_DOUBLE("bounds", "x_lo", bounds.x_lo),
      FV_DOUBLE("bounds", "h_lo", bounds.h_lo),
      Field{"strategy", "name", [](const Scenario& s) { return std::string(to_string(s.strategy)); },
            [](Scenario& s, std::string_view v) { s.strategy = parse_strategy(v); }},
      FV_DOUBLE("strategy", "rate", control.rate),
      Field{"strategy", "exit_streak",
            [](const Scenario& s) { return std::to_string(s.control.exit_streak); },
            [](Scenario& s, std::string_view v) { s.control.exit_streak = parse_int(v); }},
      Field{"strategy", "r0", [](const Scenario& s) { return fmt_auto(s.control.r0); },
            [](Scenario& s, std::string_view v) { s.control.r0 = parse_auto(v); }},
      Field{"strategy", "maturity",
            [](const Scenario& s) {
              return std::string(s.control.initial_maturity == Maturity::Mature ? "mature" : "emerging");
            },
            [](Scenario& s, std::string_view v) { s.control.initial_maturity = parse_maturity(v); }},
      Field{"strategy", "floor_step", [](const Scenario& s) { return fmt_auto(s.control.floor_step); },
            [](Scenario& s, std::string_view v) { s.control.floor_step = parse_auto(v); }},
      FV_DOUBLE("simulation", "dt", sim.dt),
      FV_DOUBLE("simulation", "horizon", sim.horizon),
      FV_DOUBLE("simulation", "control_interval", sim.control_interval),
      FV_DOUBLE("simulation", "x0", sim.x0),
      Field{"simulation", "stride", [](const Scenario& s) { return std::to_string(s.sim.stride); },
            [](Scenario& s, std::string_view v) { s.sim.stride = parse_int(v); }},
      Field{"simulation", "forced_moratorium",
            [](const Scenario& s) { return std::string(s.sim.forced_moratorium ? "true" : "false"); },
            [](Scenario& s, std::string_view v) { s.sim.forced_moratorium = parse_bool(v); }},
      FV_DOUBLE("simulation", "viability_tolerance", sim.viability_tolerance),
      Field{"simulation", "deadband", [](const Scenario& s) { return fmt_auto(s.sim.deadband); },
            [](Scenario& s, std::string_view v) { s.sim.deadband = parse_auto(v); }},
      FV_STRING("output", "dir", output.dir),
      FV_STRING("output", "trajectory", output.trajectory),
      FV_STRING("output", "events", output.events),
      FV_STRING("output", "phase", output.phase),
      FV_STRING("output", "levels", output.levels),
      FV_STRING("output", "sweep", output.sweep),
  };
  return table;
}

#undef FV_DOUBLE
#undef FV_STRING

const Field* find_field(std::string_view section, std::string_view key) {
  for (const auto& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

const Field& lookup(std::string_view name) {
  const auto dot = name.find('.');
  if (dot != std::string_view::npos) {
    if (const Field* f = find_field(name.substr(0, dot), name.substr(dot + 1))) return *f;
    throw std::invalid_argument(fmt::format("unknown field '{}'", name));
  }
  const Field* hit = nullptr;
  for (const auto& f : fields()) {
    if (f.key != name) continue;
    if (hit) {
      throw std::invalid_argument(
          fmt::format("field '{}' is ambiguous; qualify it as section.key", name));
    }
    hit = &f;
  }
  if (!hit) throw std::invalid_argument(fmt::format("unknown field '{}'", name));
  return *hit;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Recruitment Scenario::recruitment() const { return Recruitment::logistic(growth, capacity); }

void Scenario::validate() const {
  econ.validate();
  recruitment();
  bounds.validate();
  control.validate();
  sim.validate();
  if (output.dir.empty()) throw std::invalid_argument("output dir must not be empty");
}

Scenario parse_scenario(std::string_view text, std::string_view source) {
  Scenario scenario;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    auto fail = [&](const std::string& msg) {
      throw ConfigError(fmt::format("{}:{}: {}", source, line_no, msg), line_no);
    };

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const bool known = std::any_of(fields().begin(), fields().end(),
                                     [&](const Field& f) { return f.section == section; });
      if (!known) fail(fmt::format("unknown section [{}]", section));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) fail(fmt::format("key '{}' appears before any section", key));
    const Field* field = find_field(section, key);
    if (!field) fail(fmt::format("unknown key '{}' in [{}]", key, section));
    const auto qualified = fmt::format("{}.{}", section, key);
    if (!seen.insert(qualified).second) fail(fmt::format("duplicate key '{}'", qualified));
    if (value.empty()) fail(fmt::format("{}: missing value", qualified));
    try {
      field->set(scenario, value);
    } catch (const std::invalid_argument& e) {
      fail(fmt::format("{}: {}", qualified, e.what()));
    }
  }

  try {
    scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", source, e.what()), 0);
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("{}: cannot open file", path.string()), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize(const Scenario& scenario) {
  std::string out;
  std::string_view section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += fmt::format("[{}]\n", section);
    }
    out += fmt::format("{} = {}\n", f.key, f.get(scenario));
  }
  return out;
}

void set_field(Scenario& scenario, std::string_view field, std::string_view value) {
  const Field& f = lookup(field);
  try {
    f.set(scenario, value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(fmt::format("{}.{}: {}", f.section, f.key, e.what()));
  }
}

std::string resolve_field(std::string_view field) {
  const Field& f = lookup(field);
  return fmt::format("{}.{}", f.section, f.key);
}

std::vector<std::string> field_names() {
  std::vector<std::string> names;
  for (const auto& f : fields()) names.push_back(fmt::format("{}.{}", f.section, f.key));
  return names;
}

}  // namespace fishvia
