#include "fishvia/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace fishvia {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Ichthyocentric: return "ichthyocentric";
    case Strategy::Conservative: return "conservative";
    case Strategy::Qualitative: return "qualitative";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  for (auto s : {Strategy::Ichthyocentric, Strategy::Conservative, Strategy::Qualitative}) {
    if (text == to_string(s)) return s;
  }
  throw std::invalid_argument(fmt::format(
      "unknown strategy '{}' (expected ichthyocentric, conservative or qualitative)", text));
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Initial: return "initial";
    case Rule::DecreaseNonBinding: return "0";
    case Rule::IncreaseGrowingAbove: return "1";
    case Rule::IncreaseGrowingBelow: return "2";
    case Rule::DecreaseDecliningMature: return "3'";
    case Rule::Moratorium: return "4'";
    case Rule::PursueFromAbove: return "3''";
    case Rule::PursueFromBelow: return "4''";
    case Rule::MoratoriumHold: return "hold";
    case Rule::MoratoriumLifted: return "lifted";
    case Rule::Direct: return "direct";
  }
  return "?";
}

void ControllerSettings::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument(fmt::format("strategy rate must be positive (got {})", rate));
  }
  if (exit_streak < 1) throw std::invalid_argument("strategy exit_streak must be at least 1");
  if (r0 && !(*r0 >= 0.0)) throw std::invalid_argument("strategy r0 must be non-negative");
  if (floor_step && !(*floor_step > 0.0)) {
    throw std::invalid_argument("strategy floor_step must be positive");
  }
}

double ichthyocentric_recommend(const Recruitment& rec, double x) {
  return rec(x);
}

double conservative_recommend(const EconParams& params, const ViabilityBounds& bounds, double x) {
  return std::max(0.0, r_lo(params, bounds, x));
}

ControllerState make_controller(Strategy strategy, const ControllerSettings& settings,
                                const EconParams& params, const Recruitment& rec,
                                const ViabilityBounds& bounds, double x0) {
  settings.validate();
  ControllerState s;
  s.strategy = strategy;
  s.maturity = settings.initial_maturity;
  s.rate = settings.rate;
  s.exit_streak = settings.exit_streak;
  s.floor_step = settings.floor_step.value_or(1e-3 * rec.max_rate());
  switch (strategy) {
    case Strategy::Ichthyocentric: s.r = std::max(0.0, ichthyocentric_recommend(rec, x0)); break;
    case Strategy::Conservative: s.r = conservative_recommend(params, bounds, x0); break;
    case Strategy::Qualitative: s.r = settings.r0.value_or(0.0); break;
  }
  return s;
}

namespace {

RegionLabel observed_region(const Observation& obs, const ViabilityBounds& bounds, Maturity m) {
  const QualitativeObservation q{obs.x_trend, sign_of(obs.h - bounds.h_lo, kHarvestTolerance),
                                 obs.binding};
  return classify_region(q, m);
}

}  // namespace

ControllerState qualitative_step(const ControllerState& state, const Observation& obs,
                                 const ViabilityBounds& bounds) {
  ControllerState s = state;
  if (s.moratorium) {
    s.increasing_streak = obs.x_trend == Sign::Negative ? 0 : s.increasing_streak + 1;
    if (s.increasing_streak >= s.exit_streak) {
      s.moratorium = false;
      s.pursuit = true;
      s.increasing_streak = 0;
      s.last_rule = Rule::MoratoriumLifted;
    } else {
      s.last_rule = Rule::MoratoriumHold;
    }
    return s;
  }

  const double up = std::max(s.r * (1.0 + s.rate), s.r + s.floor_step);
  const double down = s.r / (1.0 + s.rate);
  const bool mature_rules = s.maturity == Maturity::Mature && !s.pursuit;

  switch (observed_region(obs, bounds, s.maturity).region) {
    case Region::R0_NonBinding:
      s.r = down;
      s.last_rule = Rule::DecreaseNonBinding;
      break;
    case Region::R1_GrowingAboveHarvest:
      s.r = up;
      s.maturity = Maturity::Mature;
      s.pursuit = false;
      s.last_rule = Rule::IncreaseGrowingAbove;
      break;
    case Region::R2_GrowingBelowHarvest:
      s.r = up;
      s.last_rule = Rule::IncreaseGrowingBelow;
      break;
    case Region::R3_DecliningAboveHarvest:
      s.r = down;
      s.last_rule = mature_rules ? Rule::DecreaseDecliningMature : Rule::PursueFromAbove;
      break;
    case Region::R4_DecliningBelowHarvest:
      if (mature_rules) {
        s.moratorium = true;
        s.increasing_streak = 0;
        s.last_rule = Rule::Moratorium;
      } else {
        s.r = up;
        s.last_rule = Rule::PursueFromBelow;
      }
      break;
  }
  return s;
}

ControllerState controller_step(const ControllerState& state, const Observation& obs,
                                const EconParams& params, const Recruitment& rec,
                                const ViabilityBounds& bounds) {
  if (state.strategy == Strategy::Qualitative) return qualitative_step(state, obs, bounds);

  ControllerState s = state;
  if (observed_region(obs, bounds, s.maturity).region == Region::R1_GrowingAboveHarvest) {
    s.maturity = Maturity::Mature;
  }
  s.r = s.strategy == Strategy::Ichthyocentric ? std::max(0.0, ichthyocentric_recommend(rec, obs.x))
                                               : conservative_recommend(params, bounds, obs.x);
  s.last_rule = Rule::Direct;
  return s;
}

}  // namespace fishvia
