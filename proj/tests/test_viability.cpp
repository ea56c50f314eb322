#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "fishvia/viability.hpp"

using namespace fishvia;
using doctest::Approx;

namespace {
const EconParams sym{};
const auto logistic = Recruitment::logistic(1.0, 2.0);
const ViabilityBounds canonical{1.0, 0.4};
}  // namespace

TEST_CASE("threshold curves") {
  CHECK(r_bar(sym, logistic, 1.0) == Approx(0.25));
  CHECK(r_bar(sym, logistic, 2.0) == Approx(-0.75));
  CHECK(r_bar(sym, logistic, 1e-9) > 1e6);
  CHECK(r_lo(sym, canonical, 1.0) == Approx(0.1));
  CHECK(r_lo(sym, canonical, 0.7) == Approx(0.4));
  CHECK(r_lo(sym, ViabilityBounds{1.0, 0.5}, 1.0) == Approx(0.25));
  CHECK(harvest_binding(sym, 1.0, r_lo(sym, canonical, 1.0)) == Approx(0.4));
  CHECK_THROWS_AS(r_lo(sym, canonical, 0.0), std::domain_error);
  EconParams free = sym;
  free.kappa1 = free.kappa2 = 0.0;
  CHECK_THROWS_AS(r_bar(free, logistic, 1.0), std::domain_error);
}

TEST_CASE("viability domain") {
  auto rep = check_viability_domain(sym, logistic, canonical);
  CHECK(rep.viable);
  CHECK(rep.margin_profitable == Approx(0.9));
  CHECK(rep.margin_sustainable == Approx(0.1));
  CHECK(rep.reducible);

  rep = check_viability_domain(sym, logistic, ViabilityBounds{1.0, 0.6});
  CHECK_FALSE(rep.viable);
  CHECK_FALSE(rep.sustainable_floor);
  CHECK(rep.margin_sustainable == Approx(-0.1));

  rep = check_viability_domain(sym, logistic, ViabilityBounds{1.0, 1e-9});
  CHECK(rep.viable);

  CHECK_THROWS_AS(check_viability_domain(sym, logistic, ViabilityBounds{0.0, 0.4}), std::invalid_argument);
}

TEST_CASE("critical levels") {
  auto lv = critical_levels(sym, logistic, canonical);
  REQUIRE(lv.a);
  REQUIRE(lv.b);
  REQUIRE(lv.c);
  CHECK(*lv.a == Approx(0.7).epsilon(1e-9));
  CHECK(*lv.b == Approx(1.0 - std::sqrt(0.2)).epsilon(1e-9));
  CHECK(*lv.c == Approx(1.0 + std::sqrt(0.2)).epsilon(1e-9));
  CHECK(lv.case_order == CaseOrder::BLessA);
  CHECK(std::abs(r_lo(sym, canonical, *lv.a) - r_hat(sym, *lv.a)) <= 1e-8);
  CHECK(std::abs(logistic(*lv.b) - 0.4) <= 1e-8);
  REQUIRE(lv.rbar_rhat_crossings.size() == 1);
  CHECK(lv.rbar_rhat_crossings[0] == Approx(std::sqrt(3.0) - 1.0));

  lv = critical_levels(sym, logistic, ViabilityBounds{1.0, 0.5});
  REQUIRE(lv.b);
  CHECK(*lv.b == 1.0);
  CHECK(*lv.c == 1.0);
  CHECK(lv.case_order == CaseOrder::Degenerate);

  lv = critical_levels(sym, logistic, ViabilityBounds{1.0, 0.6});
  CHECK_FALSE(lv.b);
  CHECK_FALSE(lv.c);
  CHECK_FALSE(lv.diagnostics.empty());

  // A high enough price puts a below b.
  EconParams dear = sym;
  dear.price = 4.0;
  lv = critical_levels(dear, logistic, canonical);
  REQUIRE(lv.a);
  CHECK(*lv.a == Approx(0.35));
  CHECK(lv.case_order == CaseOrder::ALessB);
}

TEST_CASE("region classification") {
  using S = Sign;
  CHECK(classify_region({S::Positive, S::Positive, true}, Maturity::Mature) ==
        RegionLabel{Region::R1_GrowingAboveHarvest, Maturity::Mature});
  CHECK(classify_region({S::Negative, S::Negative, true}, Maturity::Mature).region ==
        Region::R4_DecliningBelowHarvest);
  CHECK(classify_region({S::Negative, S::Negative, false}, Maturity::Emerging).region == Region::R0_NonBinding);
  CHECK(classify_region({S::Positive, S::Negative, true}, Maturity::Emerging).region ==
        Region::R2_GrowingBelowHarvest);
  CHECK(classify_region({S::Negative, S::Positive, true}, Maturity::Emerging).region ==
        Region::R3_DecliningAboveHarvest);
  // Ties: a flat trend counts as growing, h == h_lo as above.
  CHECK(classify_region({S::Zero, S::Zero, true}, Maturity::Mature).region == Region::R1_GrowingAboveHarvest);
  CHECK(trend_sign(1.0, 1.0 + 1e-9, 1e-6) == S::Zero);
  CHECK(trend_sign(1.0, 0.9, 1e-6) == S::Negative);
}

TEST_CASE("threshold biconditionals at the canonical points") {
  auto f = economic_threshold_check(sym, logistic, canonical, 1.0);
  CHECK(f.claim);
  CHECK(f.ground_truth);
  f = economic_threshold_check(sym, logistic, canonical, 1.0 + std::sqrt(0.2));
  CHECK(f.agree());

  f = recruitment_threshold_check(sym, logistic, 1.0);
  CHECK_FALSE(f.claim);
  CHECK_FALSE(f.ground_truth);
  f = recruitment_threshold_check(sym, logistic, 0.55);
  CHECK(f.claim);
  CHECK(f.ground_truth);
  f = recruitment_threshold_check(sym, logistic, std::sqrt(3.0) - 1.0);
  CHECK(f.agree());
}

TEST_CASE("grid spec parsing") {
  const auto g = GridSpec::parse("0.1:2:0:1.5:200:200");
  CHECK(g.nx == 200);
  CHECK(g.r_max == 1.5);
  CHECK_NOTHROW(GridSpec::parse("1:1:0:0:1:1"));
  CHECK_THROWS_AS(GridSpec::parse("1:1:0:1:2:2"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::parse("2:1:0:1:2:2"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::parse("0:1:0:1:2:2"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::parse("0.1:1:0:1:2"), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::parse("0.1:1:0:1:2:x"), std::invalid_argument);
}

TEST_CASE("phase grid") {
  auto rows = phase_grid(sym, logistic, canonical, GridSpec{});
  CHECK(rows.size() == 40000);
  CHECK(rows[0].x == Approx(0.1));
  CHECK(rows[1].r > rows[0].r);  // r varies fastest

  rows = phase_grid(sym, logistic, canonical, GridSpec::parse("1:1:0:0:1:1"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].h == Approx(1.0 / 3.0));
  CHECK(rows[0].regime == Regime::Binding);

  // r_bar(1) = 0.25 is a stationary recommendation.
  rows = phase_grid(sym, logistic, canonical, GridSpec::parse("0.5:1.5:0:1:3:5"));
  bool found = false;
  for (const auto& row : rows) {
    if (row.x == 1.0 && row.r == 0.25) {
      found = true;
      CHECK(row.growth_sign == 0);
    }
    if (row.x == 0.5) {
      CHECK(row.h == 0.0);
      CHECK(row.regime == Regime::ShutdownUnprofitable);
    }
  }
  CHECK(found);
}
