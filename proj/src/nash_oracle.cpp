#include "fishvia/nash_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace fishvia {

void OracleConfig::validate() const {
  if (!(q_max >= 0.0)) throw std::invalid_argument("oracle q_max must be positive (or 0 for automatic)");
  if (resolution < 64) throw std::invalid_argument("oracle resolution must be at least 64");
  if (!(tolerance > 0.0)) throw std::invalid_argument("oracle tolerance must be positive");
  if (!(inner_tolerance > 0.0)) throw std::invalid_argument("oracle inner tolerance must be positive");
  if (max_iterations < 10) throw std::invalid_argument("oracle needs at least 10 iterations");
}

double default_quota_bound(const EconParams& params, double x) {
  return params.price * x / std::min(params.beta1, params.beta2) + 1.0;
}

namespace {

using Wide = long double;

Wide wide_profit(const EconParams& params, Group g, Wide q, double q_other, double x, double r) {
  return basic_profit<Wide>(params, g, q, static_cast<Wide>(q_other), static_cast<Wide>(x),
                            static_cast<Wide>(r));
}

// pi(a) - pi(b) for the same group and opponent, factored so that the large
// revenue and cost terms cancel before rounding. Near the maximizer the
// difference is second order in (a - b) and would otherwise drown in the
// rounding error of the individual profits.
Wide profit_gain(const EconParams& params, Group g, Wide a, Wide b, double q_other, double x,
                 double r) {
  const Wide xw = x;
  const Wide linear = static_cast<Wide>(params.price) - static_cast<Wide>(params.alpha(g)) / xw -
                      static_cast<Wide>(params.beta(g)) * (a + b) / xw;
  const Wide ea = a + q_other - r;
  const Wide eb = b + q_other - r;
  Wide deviation = 0;
  if (ea > 0 && eb > 0) {
    deviation = (a - b) * (ea + eb);
  } else {
    deviation = (ea > 0 ? ea * ea : Wide(0)) - (eb > 0 ? eb * eb : Wide(0));
  }
  return (a - b) * linear - static_cast<Wide>(params.kappa(g)) * deviation;
}

}  // namespace

BestResponse best_response(const EconParams& params, Group g, double q_other, double x,
                           double r, const OracleConfig& cfg) {
  cfg.validate();
  if (!(x > 0.0)) throw std::domain_error("best response needs a positive stock");
  if (!(q_other >= 0.0)) throw std::domain_error("other quota must be non-negative");

  const Wide upper = cfg.q_max > 0.0 ? cfg.q_max : default_quota_bound(params, x);
  const int n = cfg.resolution;
  const Wide step = upper / (n - 1);

  int best = 0;
  Wide best_value = -std::numeric_limits<Wide>::infinity();
  for (int i = 0; i < n; ++i) {
    const Wide value = wide_profit(params, g, step * i, q_other, x, r);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }

  // The profit is strictly concave in the own quota, so the maximizer lies
  // within one grid cell of the best grid point.
  Wide lo = step * std::max(best - 1, 0);
  Wide hi = step * std::min(best + 1, n - 1);
  const Wide inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  Wide a = hi - inv_phi * (hi - lo);
  Wide b = lo + inv_phi * (hi - lo);
  const Wide width_floor = static_cast<Wide>(cfg.inner_tolerance) * std::max(Wide(1), hi);
  while (hi - lo > width_floor) {
    if (profit_gain(params, g, b, a, q_other, x, r) > 0) {
      lo = a;
      a = b;
      b = lo + inv_phi * (hi - lo);
    } else {
      hi = b;
      b = a;
      a = hi - inv_phi * (hi - lo);
    }
  }
  Wide quota = (lo + hi) / 2;
  // Golden-section probes never touch the bracket ends; corner optima
  // (q = 0 when fishing does not pay) are returned exactly.
  if (best == 0 && profit_gain(params, g, Wide(0), quota, q_other, x, r) >= 0) quota = 0;

  BestResponse out;
  out.quota = static_cast<double>(quota);
  out.unprofitable = best_value <= 0;
  return out;
}

OracleResult equilibrium(const EconParams& params, double x, double r, const OracleConfig& cfg) {
  cfg.validate();
  if (!(x > 0.0)) throw std::domain_error("equilibrium needs a positive stock");
  if (!(r >= 0.0)) throw std::domain_error("recommendation must be non-negative");

  OracleResult res;
  double previous_move = std::numeric_limits<double>::infinity();
  double contraction = 0.0;
  for (long it = 1; it <= cfg.max_iterations; ++it) {
    const double n1 = best_response(params, Group::First, res.q2, x, r, cfg).quota;
    const double n2 = best_response(params, Group::Second, n1, x, r, cfg).quota;
    const double move = std::max(std::abs(n1 - res.q1), std::abs(n2 - res.q2));
    res.q1 = n1;
    res.q2 = n2;
    res.iterations = it;

    if (move == 0.0) {
      res.residual = 0.0;
      res.converged = true;
      return res;
    }
    if (std::isfinite(previous_move) && previous_move > 0.0) {
      // Keep the largest observed ratio over a short memory so one lucky step
      // cannot shrink the error estimate.
      contraction = std::max(0.9 * contraction, std::min(move / previous_move, 1.0 - 1e-12));
    }
    previous_move = move;
    res.residual = move / (1.0 - contraction);
    if (it >= 3 && res.residual <= cfg.tolerance) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

}  // namespace fishvia
