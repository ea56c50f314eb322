#pragma once

// Recommendation strategies. Ichthyocentric and conservative control read the
// exact stock; the qualitative controller sees only the trend sign, whether
// the harvest is above the floor and whether the recommendation binds.

#include <optional>
#include <string_view>

#include "fishvia/bioeconomic.hpp"
#include "fishvia/viability.hpp"

namespace fishvia {

enum class Strategy { Ichthyocentric, Conservative, Qualitative };

std::string_view to_string(Strategy s);
/// Accepts the lower-case names used in scenario files.
Strategy parse_strategy(std::string_view text);

struct ControllerSettings {
  double rate = 0.05;           // multiplicative step per control interval
  int exit_streak = 5;          // increasing intervals needed to lift a moratorium
  std::optional<double> r0;     // qualitative start; unset means 0
  Maturity initial_maturity = Maturity::Emerging;
  std::optional<double> floor_step;  // additive step; unset means 1e-3 R_max

  void validate() const;
};

enum class Rule {
  Initial,
  DecreaseNonBinding,      // (0)
  IncreaseGrowingAbove,    // (1)
  IncreaseGrowingBelow,    // (2)
  DecreaseDecliningMature, // (3')
  Moratorium,              // (4')
  PursueFromAbove,         // (3'')
  PursueFromBelow,         // (4'')
  MoratoriumHold,
  MoratoriumLifted,
  Direct,                  // ichthyocentric / conservative
};

std::string_view to_string(Rule rule);

struct ControllerState {
  Strategy strategy = Strategy::Conservative;
  double r = 0.0;
  Maturity maturity = Maturity::Emerging;
  bool moratorium = false;
  double rate = 0.05;
  double floor_step = 0.0;
  int exit_streak = 5;
  int increasing_streak = 0;
  // After a moratorium the controller pursues h = h_lo Emerging-style until
  // region (1) is reached again.
  bool pursuit = false;
  Rule last_rule = Rule::Initial;
};

struct Observation {
  Sign x_trend = Sign::Positive;
  double h = 0.0;
  double r = 0.0;
  bool binding = true;
  /// Exact stock. Never read by the qualitative controller.
  double x = 0.0;
};

double ichthyocentric_recommend(const Recruitment& rec, double x);
double conservative_recommend(const EconParams& params, const ViabilityBounds& bounds, double x);

ControllerState make_controller(Strategy strategy, const ControllerSettings& settings,
                                const EconParams& params, const Recruitment& rec,
                                const ViabilityBounds& bounds, double x0);

ControllerState qualitative_step(const ControllerState& state, const Observation& obs,
                                 const ViabilityBounds& bounds);

/// One control decision for any strategy. Maturity latches on the first
/// observation of region (1) regardless of strategy.
ControllerState controller_step(const ControllerState& state, const Observation& obs,
                                const EconParams& params, const Recruitment& rec,
                                const ViabilityBounds& bounds);

}  // namespace fishvia
