#include "fishvia/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace fishvia {

namespace {

long integral_ratio(double num, double den, const char* what) {
  const double ratio = num / den;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument(fmt::format("{} must be a positive integer multiple of dt", what));
  }
  return static_cast<long>(rounded);
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("simulation dt must be positive");
  if (!(control_interval >= dt)) {
    throw std::invalid_argument("simulation control_interval must be at least dt");
  }
  integral_ratio(control_interval, dt, "simulation control_interval");
  if (!(horizon >= control_interval) || !std::isfinite(horizon)) {
    throw std::invalid_argument(fmt::format(
        "simulation horizon must be at least control_interval (got {})", horizon));
  }
  integral_ratio(horizon, dt, "simulation horizon");
  if (horizon / dt > 1e9) throw std::invalid_argument("simulation needs more than 1e9 steps");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw std::invalid_argument("simulation x0 must be positive");
  if (stride < 1) throw std::invalid_argument("simulation stride must be at least 1");
  if (!(viability_tolerance >= 0.0)) {
    throw std::invalid_argument("simulation viability_tolerance must be non-negative");
  }
  if (deadband && !(*deadband >= 0.0)) {
    throw std::invalid_argument("simulation deadband must be non-negative");
  }
}

long SimConfig::total_steps() const { return integral_ratio(horizon, dt, "simulation horizon"); }

long SimConfig::steps_per_control() const {
  return integral_ratio(control_interval, dt, "simulation control_interval");
}

StepResult step(double x, double h, const Recruitment& rec, double dt) {
  if (!(x >= 0.0)) throw std::domain_error("step needs a non-negative stock");
  if (!(dt > 0.0)) throw std::domain_error("step needs a positive dt");
  auto f = [&](double y) { return rec(std::max(y, 0.0)) - h; };
  const double k1 = f(x);
  const double k2 = f(x + 0.5 * dt * k1);
  const double k3 = f(x + 0.5 * dt * k2);
  const double k4 = f(x + dt * k3);
  const double next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (next < 0.0) return {0.0, true};
  return {next, false};
}

std::string_view Sample::regime_tag() const {
  switch (phase) {
    case SamplePhase::Moratorium: return "Moratorium";
    case SamplePhase::Extinct: return "Extinct";
    case SamplePhase::Negotiated: break;
  }
  return to_string(regime);
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::ViabilityViolation: return "ViabilityViolation";
    case EventKind::ViabilityRecovery: return "ViabilityRecovery";
    case EventKind::RegionCrossing: return "RegionCrossing";
    case EventKind::MoratoriumStart: return "MoratoriumStart";
    case EventKind::MoratoriumEnd: return "MoratoriumEnd";
    case EventKind::Extinction: return "Extinction";
  }
  return "Unknown";
}

std::optional<Event> TrajectoryRecord::first_violation() const {
  for (const auto& e : events) {
    if (e.kind == EventKind::ViabilityViolation) return e;
  }
  return std::nullopt;
}

bool TrajectoryRecord::has_event(EventKind kind, std::string_view which) const {
  return std::any_of(events.begin(), events.end(), [&](const Event& e) {
    return e.kind == kind && (which.empty() || e.which == which);
  });
}

TrajectoryRecord simulate(const EconParams& params, const Recruitment& rec,
                          const ViabilityBounds& bounds, Strategy strategy,
                          const ControllerSettings& settings, const SimConfig& cfg) {
  params.validate();
  bounds.validate();
  cfg.validate();

  const long n = cfg.total_steps();
  const long per_control = cfg.steps_per_control();
  const double deadband = cfg.deadband.value_or(1e-6 * rec.capacity());
  // Instantaneous counterpart of the per-interval deadband, for the region
  // column of each sample.
  const double rate_deadband = deadband / cfg.control_interval;
  const double tol = cfg.viability_tolerance;

  TrajectoryRecord out;
  if (derive(params).w > 0.0) out.domain = check_viability_domain(params, rec, bounds);
  out.samples.reserve(static_cast<std::size_t>(n / cfg.stride + 2));

  ControllerState ctl = make_controller(strategy, settings, params, rec, bounds, cfg.x0);
  double x = cfg.x0;
  double x_at_last_control = x;
  bool extinct = false;
  auto halted = [&] { return extinct || cfg.forced_moratorium || ctl.moratorium; };
  auto harvest_at = [&](double y) {
    if (halted() || y <= 0.0) return NegotiationOutcome{0.0, 0.0, 0.0, Regime::ShutdownUnprofitable};
    return total_harvest(params, y, ctl.r);
  };

  std::optional<Sample> previous;
  double h_sum = 0.0;
  long h_count = 0;
  const long half = (n + 1) / 2;

  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;

    if (i > 0 && i % per_control == 0 && !extinct) {
      const bool was_moratorium = ctl.moratorium;
      const auto now = harvest_at(x);
      Observation obs;
      obs.x_trend = trend_sign(x_at_last_control, x, deadband);
      obs.h = now.h;
      obs.r = ctl.r;
      obs.binding = now.h + kHarvestTolerance >= ctl.r;
      obs.x = x;
      ctl = controller_step(ctl, obs, params, rec, bounds);
      x_at_last_control = x;
      if (!was_moratorium && ctl.moratorium) out.events.push_back({t, EventKind::MoratoriumStart, {}});
      if (was_moratorium && !ctl.moratorium) out.events.push_back({t, EventKind::MoratoriumEnd, {}});
    }

    const auto outcome = harvest_at(x);
    Sample s;
    s.t = t;
    s.x = x;
    s.r = ctl.r;
    s.h = outcome.h;
    s.q1 = outcome.q1;
    s.q2 = outcome.q2;
    s.regime = outcome.regime;
    s.phase = extinct ? SamplePhase::Extinct
                      : (halted() ? SamplePhase::Moratorium : SamplePhase::Negotiated);
    s.maturity = ctl.maturity;
    const double growth = rec(x);
    const QualitativeObservation q{sign_of(growth - s.h, rate_deadband),
                                   sign_of(s.h - bounds.h_lo, kHarvestTolerance),
                                   s.h + kHarvestTolerance >= s.r};
    s.region = classify_region(q, ctl.maturity).region;
    s.viable_eco = x >= bounds.x_lo - tol;
    s.viable_econ = s.h >= bounds.h_lo - tol;

    auto flag_event = [&](bool before, bool after, const char* which) {
      if (before && !after) out.events.push_back({t, EventKind::ViabilityViolation, which});
      if (!before && after) out.events.push_back({t, EventKind::ViabilityRecovery, which});
    };
    flag_event(previous ? previous->viable_eco : true, s.viable_eco, "ecological");
    flag_event(previous ? previous->viable_econ : true, s.viable_econ, "economic");
    if (previous && previous->region != s.region) {
      out.events.push_back({t, EventKind::RegionCrossing,
                            fmt::format("{}->{}", to_string(previous->region), to_string(s.region))});
    }

    if (i >= half) {
      h_sum += s.h;
      ++h_count;
    }
    if (i % cfg.stride == 0 || i == n) out.samples.push_back(s);
    previous = s;
    if (i == n) break;

    // Negotiation is re-solved at every stage; only r is frozen between
    // control decisions.
    auto f = [&](double y) { return y <= 0.0 ? 0.0 : rec(y) - harvest_at(y).h; };
    const double dt = cfg.dt;
    const double k1 = f(x);
    const double k2 = f(x + 0.5 * dt * k1);
    const double k3 = f(x + 0.5 * dt * k2);
    const double k4 = f(x + dt * k3);
    const double next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (next < 0.0 || (next == 0.0 && x > 0.0)) {
      if (!extinct) out.events.push_back({t + dt, EventKind::Extinction, {}});
      extinct = true;
      x = 0.0;
    } else {
      x = next;
    }
  }

  out.terminal_x = x;
  out.mean_h_final_half = h_count > 0 ? h_sum / static_cast<double>(h_count) : 0.0;
  return out;
}

}  // namespace fishvia
