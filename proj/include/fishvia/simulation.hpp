#pragma once

// Closed-loop integration of dx/dt = R(x) - h(x, r) with event detection.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishvia/bioeconomic.hpp"
#include "fishvia/control.hpp"
#include "fishvia/viability.hpp"

namespace fishvia {

struct SimConfig {
  double dt = 0.01;
  double horizon = 200.0;
  double control_interval = 0.1;
  double x0 = 1.2;
  int stride = 1;
  /// Holds h at 0 for the whole run, whatever the strategy.
  bool forced_moratorium = false;
  /// Slack on the viability flags.
  double viability_tolerance = 1e-9;
  /// Trend deadband per control interval; unset means 1e-6 K.
  std::optional<double> deadband;

  void validate() const;
  long total_steps() const;
  long steps_per_control() const;
};

struct StepResult {
  double x = 0.0;
  bool extinct = false;
};

/// One classical RK4 step with h held constant. A negative result is clamped
/// to 0 and flagged.
StepResult step(double x, double h, const Recruitment& rec, double dt);

enum class SamplePhase { Negotiated, Moratorium, Extinct };

struct Sample {
  double t = 0.0;
  double x = 0.0;
  double r = 0.0;
  double h = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  Regime regime = Regime::Binding;
  SamplePhase phase = SamplePhase::Negotiated;
  Region region = Region::R0_NonBinding;
  Maturity maturity = Maturity::Emerging;
  bool viable_eco = true;
  bool viable_econ = true;

  /// Regime column: the negotiation regime, or Moratorium / Extinct.
  std::string_view regime_tag() const;
};

enum class EventKind {
  ViabilityViolation,
  ViabilityRecovery,
  RegionCrossing,
  MoratoriumStart,
  MoratoriumEnd,
  Extinction,
};

std::string_view to_string(EventKind kind);

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::ViabilityViolation;
  std::string which;  // "ecological"/"economic", or "R1->R3" for crossings
};

struct TrajectoryRecord {
  std::vector<Sample> samples;
  std::vector<Event> events;
  std::optional<ViabilityReport> domain;  // informative only
  double terminal_x = 0.0;
  /// Time average of h over steps in the final half of the horizon.
  double mean_h_final_half = 0.0;

  std::optional<Event> first_violation() const;
  bool violated() const { return first_violation().has_value(); }
  bool has_event(EventKind kind, std::string_view which = {}) const;
};

TrajectoryRecord simulate(const EconParams& params, const Recruitment& rec,
                          const ViabilityBounds& bounds, Strategy strategy,
                          const ControllerSettings& settings, const SimConfig& cfg);

}  // namespace fishvia
