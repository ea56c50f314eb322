#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fishvia/bioeconomic.hpp"

using namespace fishvia;
using doctest::Approx;

namespace {
const EconParams sym{};  // alpha = beta = kappa = 1, p = 2
const auto logistic = Recruitment::logistic(1.0, 2.0);
}  // namespace

TEST_CASE("logistic recruitment") {
  CHECK(logistic(0.0) == 0.0);
  CHECK(logistic(1.0) == Approx(0.5));
  CHECK(logistic(2.0) == 0.0);
  CHECK(logistic.x_msy() == 1.0);
  CHECK(logistic.max_rate() == 0.5);
  CHECK_THROWS_AS(logistic(-0.1), std::domain_error);
  CHECK_THROWS_AS(Recruitment::logistic(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(Recruitment::logistic(1.0, -2.0), std::invalid_argument);

  // Schaefer shape, checked by finite differences.
  for (int i = 1; i < 200; ++i) {
    const double x = 4.0 * i / 200.0;
    const double slope = (logistic(x + 1e-6) - logistic(x - 1e-6)) / 2e-6;
    if (x < logistic.x_msy() - 1e-3) {
      CHECK(logistic(x) > 0.0);
      CHECK(slope > 0.0);
    } else if (x > logistic.x_msy() + 1e-3) {
      CHECK(slope < 0.0);
    }
  }
}

TEST_CASE("custom Schaefer-shaped recruitment") {
  auto gompertz_like = Recruitment::schaefer_shaped(
      "sine", [](double x) { return x <= 3.0 ? std::sin(x * M_PI / 3.0) : -1.0; }, 1.5, 3.0);
  CHECK(gompertz_like.max_rate() == Approx(1.0));
  CHECK_FALSE(gompertz_like.is_logistic());
  CHECK_THROWS_AS(Recruitment::schaefer_shaped("bad", [](double x) { return x + 1.0; }, 1.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Recruitment::schaefer_shaped("bad", [](double x) { return x; }, 1.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("parameter validation names the field") {
  EconParams p;
  p.beta2 = -1.0;
  try {
    p.validate();
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("beta2") != std::string::npos);
  }
  p = {};
  p.kappa1 = 0.0;
  CHECK_NOTHROW(p.validate());
  p.kappa2 = 0.0;
  CHECK(p.unmanaged());
}

TEST_CASE("derived coefficients") {
  EconParams p{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
  const auto d = derive(p);
  CHECK(d.u == 3.5);
  CHECK(d.w == 3.0 * 6.0 + 4.0 * 5.0);
  CHECK(d.v == (1.0 * 4.0 + 2.0 * 3.0) / 2.0);
  CHECK(d.bb == 12.0);
}

TEST_CASE("unconstrained total") {
  CHECK(r_hat(sym, 1.0) == Approx(1.0));
  CHECK(r_hat(sym, 0.5) == Approx(0.0));
  CHECK(r_hat(sym, 0.4) == Approx(-0.2));
  CHECK_THROWS_AS(r_hat(sym, 0.0), std::domain_error);
}

TEST_CASE("binding harvest") {
  CHECK(harvest_binding(sym, 1.0, 0.0) == Approx(1.0 / 3.0));
  CHECK(harvest_binding(sym, 1.0, 1.0) == Approx(1.0));
  CHECK(harvest_binding(sym, 1.0, 0.25) == Approx(0.5));
  EconParams free = sym;
  free.kappa1 = free.kappa2 = 0.0;
  CHECK_THROWS_AS(harvest_binding(free, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(harvest_binding(sym, 1.0, -0.1), std::domain_error);
}

TEST_CASE("total harvest dispatch") {
  auto out = total_harvest(sym, 1.0, 0.5);
  CHECK(out.regime == Regime::Binding);
  CHECK(out.h == Approx(2.0 / 3.0));

  out = total_harvest(sym, 1.0, 2.0);
  CHECK(out.regime == Regime::NonBinding);
  CHECK(out.h == Approx(1.0));

  out = total_harvest(sym, 0.4, 10.0);
  CHECK(out.regime == Regime::ShutdownUnprofitable);
  CHECK(out.h == 0.0);

  // Equality at the boundary resolves to NonBinding.
  out = total_harvest(sym, 1.0, r_hat(sym, 1.0));
  CHECK(out.regime == Regime::NonBinding);
  CHECK(out.h == Approx(1.0));

  // r = 0 at a profitable stock is binding, never the restricted shutdown.
  out = total_harvest(sym, 0.6, 0.0);
  CHECK(out.regime == Regime::Binding);
  CHECK(out.h > 0.0);
}

TEST_CASE("individual quotas") {
  auto [q1, q2] = individual_quotas(sym, 1.0, 0.0);
  CHECK(q1 == Approx(1.0 / 6.0));
  CHECK(q2 == Approx(1.0 / 6.0));

  std::tie(q1, q2) = individual_quotas(sym, 1.0, 5.0);
  CHECK(q1 == Approx(0.5));
  CHECK(q2 == Approx(0.5));

  EconParams asym = sym;
  asym.alpha2 = 2.0;
  std::tie(q1, q2) = individual_quotas(asym, 1.0, 100.0);
  CHECK(q1 == Approx(0.5));
  CHECK(q2 == 0.0);
}

TEST_CASE("clamped corner re-solves the active group") {
  // Group 2 is priced out below x = alpha2 / p = 2.5.
  EconParams asym = sym;
  asym.alpha2 = 5.0;
  const double x = 1.0;
  const double r = 0.1;
  const auto out = total_harvest(asym, x, r);
  CHECK(out.q2 == 0.0);
  const double expected = (2.0 * x - 1.0 + 2.0 * x * r) / (2.0 + 2.0 * x);
  CHECK(out.q1 == Approx(expected));
  CHECK(out.h == Approx(expected));
  CHECK(out.h <= nonbinding_harvest(asym, x) + kHarvestTolerance);
}

TEST_CASE("profit") {
  CHECK(profit(sym, Group::First, 1.0 / 6.0, 1.0 / 6.0, 1.0, 0.0) ==
        Approx(2.0 / 6.0 - (1.0 / 6.0 + 1.0 / 36.0) - 1.0 / 9.0));
  CHECK(profit(sym, Group::Second, 0.0, 0.0, 3.0, 1.0) == 0.0);
  CHECK(profit(sym, Group::First, 0.2, 0.2, 1.0, 1.0) == Approx(0.16));
  CHECK_THROWS_AS(profit(sym, Group::First, -0.1, 0.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(profit(sym, Group::First, 0.1, 0.0, 0.0, 0.0), std::domain_error);
}
