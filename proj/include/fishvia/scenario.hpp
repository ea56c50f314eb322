#pragma once

// Scenario files: sectioned key = value text with a strict schema.
//
//   [econ]        alpha1 alpha2 beta1 beta2 kappa1 kappa2 price
//   [recruitment] model growth capacity
//   [bounds]      x_lo h_lo
//   [strategy]    name rate exit_streak r0 maturity floor_step
//   [simulation]  dt horizon control_interval x0 stride forced_moratorium
//                 viability_tolerance deadband
//   [output]      dir trajectory events phase levels sweep
//
// Lines starting with '#' or ';' are comments. Optional values accept "auto".

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fishvia/bioeconomic.hpp"
#include "fishvia/control.hpp"
#include "fishvia/simulation.hpp"
#include "fishvia/viability.hpp"

namespace fishvia {

struct OutputSettings {
  std::string dir = "out";
  std::string trajectory = "trajectory.csv";
  std::string events = "events.json";
  std::string phase = "phase.csv";
  std::string levels = "phase_levels.json";
  std::string sweep = "sweep.csv";
};

struct Scenario {
  EconParams econ;
  double growth = 1.0;
  double capacity = 2.0;
  ViabilityBounds bounds;
  Strategy strategy = Strategy::Conservative;
  ControllerSettings control;
  SimConfig sim;
  OutputSettings output;

  Recruitment recruitment() const;
  /// Re-checks every module invariant; throws std::invalid_argument.
  void validate() const;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& what, int line) : std::invalid_argument(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Scenario parse_scenario(std::string_view text, std::string_view source = "<input>");
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form: every field, fixed order, 17 significant digits.
std::string serialize(const Scenario& scenario);

/// Sets a field by "section.key" or by a key that is unique across sections.
void set_field(Scenario& scenario, std::string_view field, std::string_view value);

/// Fully qualified name for `field`; throws if unknown or ambiguous.
std::string resolve_field(std::string_view field);

std::vector<std::string> field_names();

}  // namespace fishvia
