#include <doctest.h>

#include <stdexcept>

#include "fishvia/nash_oracle.hpp"

using namespace fishvia;
using doctest::Approx;

namespace {
const EconParams sym{};
}

TEST_CASE("best response") {
  CHECK(best_response(sym, Group::First, 1.0 / 6.0, 1.0, 0.0).quota == Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(best_response(sym, Group::First, 0.0, 1.0, 10.0).quota == Approx(0.5).epsilon(1e-9));

  const auto idle = best_response(sym, Group::Second, 0.3, 0.4, 1.0);
  CHECK(idle.quota == 0.0);
  CHECK(idle.unprofitable);
  CHECK_THROWS(best_response(sym, Group::First, -1.0, 1.0, 0.0));
}

TEST_CASE("equilibrium from (0, 0)") {
  auto eq = equilibrium(sym, 1.0, 0.0);
  CHECK(eq.converged);
  CHECK(eq.residual <= 1e-8);
  CHECK(eq.q1 == Approx(1.0 / 6.0).epsilon(1e-8));
  CHECK(eq.q2 == Approx(1.0 / 6.0).epsilon(1e-8));

  eq = equilibrium(sym, 1.0, 2.0);
  CHECK(eq.converged);
  CHECK(eq.q1 == Approx(0.5).epsilon(1e-8));
  CHECK(eq.q2 == Approx(0.5).epsilon(1e-8));

  eq = equilibrium(sym, 0.4, 1.0);
  CHECK(eq.converged);
  CHECK(eq.q1 == 0.0);
  CHECK(eq.q2 == 0.0);
}

TEST_CASE("slow contraction still reaches the closed form") {
  // Best-response slopes near -1: cheap quotas, heavy deviation costs.
  EconParams p{0.1, 0.1, 0.1, 0.1, 10.0, 10.0, 10.0};
  const double x = 10.0;
  const double r = 5.0;
  const auto eq = equilibrium(p, x, r);
  const auto closed = total_harvest(p, x, r);
  CHECK(eq.converged);
  CHECK(eq.total() == Approx(closed.h).epsilon(1e-6));
  CHECK(eq.q1 == Approx(closed.q1).epsilon(1e-6));
}

TEST_CASE("non-convergence is reported, not thrown") {
  OracleConfig cfg;
  cfg.max_iterations = 10;
  cfg.tolerance = 1e-300;
  EconParams p{0.1, 0.1, 0.1, 0.1, 10.0, 10.0, 10.0};
  const auto eq = equilibrium(p, 10.0, 5.0, cfg);
  CHECK_FALSE(eq.converged);
  CHECK(eq.iterations == 10);
}

TEST_CASE("oracle config validation") {
  OracleConfig cfg;
  cfg.resolution = 10;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
