#include <doctest.h>

#include <stdexcept>

#include <string>

#include <json.hpp>

#include "fishvia/export.hpp"
#include "fishvia/sweep.hpp"

using namespace fishvia;

namespace {
Scenario canonical() { return load_scenario(std::string(FISHVIA_SCENARIO_DIR) + "/canonical.ini"); }
}  // namespace

TEST_CASE("axis parsing") {
  auto axes = parse_axes("econ.price=1:4:4,strategy.name=conservative:qualitative");
  REQUIRE(axes.size() == 2);
  CHECK(axes[0].values == std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(axes[1].values.size() == 2);
  CHECK(parse_axes("").empty());
  CHECK(parse_axes("h_lo=0.5:0.9:1")[0].values == std::vector<std::string>{"0.5"});
  CHECK_THROWS_AS(parse_axes("nonsense=0:1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axes("price"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axes("price=1:2:1001,h_lo=0:1:1001"), std::invalid_argument);
}

TEST_CASE("single-cell sweep equals a plain run") {
  const auto base = canonical();
  const auto result = sweep(base, {});
  REQUIRE(result.cells.size() == 1);
  const auto direct = summarize(base);
  CHECK(result.cells[0].summary.terminal_x == direct.terminal_x);
  CHECK(result.cells[0].summary.mean_h == direct.mean_h);
}

TEST_CASE("cells are reproducible standalone and ordered") {
  auto base = canonical();
  base.sim.horizon = 20.0;
  const auto axes = parse_axes("price=1:4:4,x0=1:1.5:3");
  const auto result = sweep(base, axes, 3);
  REQUIRE(result.cells.size() == 12);
  CHECK(result.cells[1].values == std::vector<std::string>{"1", "1.25"});
  for (const auto& cell : result.cells) {
    Scenario s = base;
    set_field(s, "econ.price", cell.values[0]);
    set_field(s, "simulation.x0", cell.values[1]);
    const auto alone = summarize(s);
    CHECK(alone.terminal_x == cell.summary.terminal_x);
    CHECK(alone.mean_h == cell.summary.mean_h);
  }
}

TEST_CASE("strategy axis and failures stay in the grid") {
  const auto result = sweep(canonical(), parse_axes("strategy.name=ichthyocentric:conservative:qualitative"));
  REQUIRE(result.cells.size() == 3);
  CHECK(result.cells[0].summary.violated);
  CHECK_FALSE(result.cells[1].summary.violated);
  CHECK_FALSE(result.cells[2].summary.violated);

  const auto broken = sweep(canonical(), parse_axes("econ.beta1=-1:1:2"));
  REQUIRE(broken.cells.size() == 2);
  CHECK_FALSE(broken.cells[0].summary.ok);
  CHECK(broken.cells[1].summary.ok);
  CHECK(sweep_csv(broken).find("error") != std::string::npos);
}

TEST_CASE("h_lo axis flips the domain verdict at R(x_lo)") {
  auto base = canonical();
  base.sim.horizon = 1.0;
  const auto result = sweep(base, parse_axes("h_lo=0.3:0.7:41"));
  for (const auto& cell : result.cells) {
    const double h_lo = std::stod(cell.values[0]);
    REQUIRE(cell.summary.domain_viable);
    CHECK(*cell.summary.domain_viable == (h_lo <= 0.5));
  }
}

TEST_CASE("export formats") {
  const auto s = canonical();
  const auto run = simulate(s.econ, s.recruitment(), s.bounds, s.strategy, s.control, s.sim);
  const auto csv = trajectory_csv(run);
  CHECK(csv.rfind("t,x,r,h,q1,q2,regime,region,maturity,viable_eco,viable_econ\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv == trajectory_csv(simulate(s.econ, s.recruitment(), s.bounds, s.strategy, s.control, s.sim)));
  CHECK(csv.find("1.2,") != std::string::npos);

  const auto doc = nlohmann::json::parse(events_json(run));
  CHECK(doc["events"].is_array());
  CHECK(doc["viability_domain"]["viable"] == true);

  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");

  const auto lv = critical_levels(s.econ, s.recruitment(), s.bounds);
  const auto levels = nlohmann::json::parse(levels_json(lv, s.bounds));
  CHECK(levels["case_order"] == "BLessA");
  CHECK(levels["x_lo"] == 1.0);
}
