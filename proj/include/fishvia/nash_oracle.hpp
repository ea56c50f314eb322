#pragma once

// Brute-force negotiation equilibrium: alternating best responses, each found
// by a grid scan of the profit followed by golden-section refinement. Shares
// nothing with the closed forms except the profit function itself.

#include "fishvia/bioeconomic.hpp"

namespace fishvia {

struct OracleConfig {
  /// Upper end of the quota search interval; 0 selects p x / min(beta) + 1,
  /// beyond which no group's marginal profit can be positive.
  double q_max = 0.0;
  int resolution = 256;
  /// Outer fixed-point tolerance on the estimated distance to equilibrium.
  double tolerance = 1e-8;
  /// Relative width at which golden-section refinement stops.
  double inner_tolerance = 1e-13;
  long max_iterations = 400000;

  void validate() const;
};

struct BestResponse {
  double quota = 0.0;
  /// Set when no quota on the grid earns a positive profit.
  bool unprofitable = false;
};

struct OracleResult {
  double q1 = 0.0;
  double q2 = 0.0;
  bool converged = false;
  long iterations = 0;
  /// A-posteriori bound on the distance to the fixed point.
  double residual = 0.0;

  double total() const { return q1 + q2; }
};

double default_quota_bound(const EconParams& params, double x);

BestResponse best_response(const EconParams& params, Group g, double q_other, double x,
                           double r, const OracleConfig& cfg = {});

OracleResult equilibrium(const EconParams& params, double x, double r,
                         const OracleConfig& cfg = {});

}  // namespace fishvia
