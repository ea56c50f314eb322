// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "fishvia/export.hpp"
#include "fishvia/scenario.hpp"
#include "fishvia/simulation.hpp"
#include "fishvia/verification.hpp"
#include "fishvia/viability.hpp"

using namespace fishvia;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

const std::string kCanonical = std::string(FISHVIA_SCENARIO_DIR) + "/canonical.ini";

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("{} {} {}: {}\n", pass ? "PASS" : "FAIL", id, name, detail);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TrajectoryRecord run(const Scenario& s) {
  return simulate(s.econ, s.recruitment(), s.bounds, s.strategy, s.control, s.sim);
}

Scenario with_strategy(Strategy strategy) {
  Scenario s = load_scenario(kCanonical);
  s.strategy = strategy;
  s.control.rate = 0.05;
  s.sim.control_interval = 0.1;
  return s;
}

Scenario crisis() {
  Scenario s = with_strategy(Strategy::Qualitative);
  s.sim.x0 = 0.6;
  s.control.initial_maturity = Maturity::Mature;
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_nash() {
  const auto start = Clock::now();
  VerifyOptions opt;
  opt.instances = 1000;
  const auto r = verify_nash_agreement(opt);
  const double t = seconds_since(start);
  report(1, "nash-oracle-agreement", r.ok() && t < 30.0,
         fmt::format("{}/{} instances within 1e-6 relative, {:.2f}s", r.passed, r.total, t));
}

void criterion_domain() {
  const auto start = Clock::now();
  VerifyOptions opt;
  opt.instances = 2000;
  const auto r = verify_domain_equivalence(opt);
  const double t = seconds_since(start);
  report(2, "viability-domain-equivalence", r.ok() && r.total + r.excluded == 2000 && t < 60.0,
         fmt::format("{}/{} agree, {} within 1e-6 of a margin, {:.2f}s", r.passed, r.total, r.excluded, t));
}

void criterion_thresholds() {
  const auto start = Clock::now();
  VerifyOptions opt;
  opt.instances = 10000;
  const auto p2 = verify_economic_threshold(opt);
  const auto p3 = verify_recruitment_threshold(opt);
  const double t = seconds_since(start);
  report(3, "threshold-biconditionals", p2.ok() && p3.ok() && p2.total == 10000 && p3.total == 10000 && t < 30.0,
         fmt::format("economic {}/{}, recruitment {}/{}, {:.2f}s", p2.passed, p2.total, p3.passed, p3.total, t));
}

void criterion_levels() {
  const Scenario s = load_scenario(kCanonical);
  const auto lv = critical_levels(s.econ, s.recruitment(), s.bounds);
  const double b = 1.0 - std::sqrt(0.2);
  const double c = 1.0 + std::sqrt(0.2);
  const bool pass = lv.a && lv.b && lv.c && std::abs(*lv.a - 0.7) <= 1e-6 && std::abs(*lv.b - b) <= 1e-6 &&
                    std::abs(*lv.c - c) <= 1e-6;
  report(4, "canonical-critical-levels", pass,
         fmt::format("a={} b={} c={} ({})", lv.a ? format_number(*lv.a) : "absent",
                     lv.b ? format_number(*lv.b) : "absent", lv.c ? format_number(*lv.c) : "absent",
                     to_string(lv.case_order)));
}

void criterion_strategies() {
  const auto start = Clock::now();
  const auto cons = run(with_strategy(Strategy::Conservative));
  const auto ich = run(with_strategy(Strategy::Ichthyocentric));
  const auto qual = run(with_strategy(Strategy::Qualitative));
  const double t = seconds_since(start);

  const auto ich_first = ich.first_violation();
  const bool ich_eco = ich_first && ich_first->which == "ecological" && std::isfinite(ich_first->t);
  const bool pass = !cons.violated() && ich_eco && !qual.violated() &&
                    qual.mean_h_final_half > cons.mean_h_final_half && t < 10.0;
  report(5, "strategy-outcomes", pass,
         fmt::format("conservative violations={} ; ichthyocentric first violation {} at t={} ; qualitative "
                     "violations={} ; mean h final half qualitative={} conservative={} ; {:.2f}s",
                     cons.violated() ? "yes" : "none", ich_first ? ich_first->which : "none",
                     ich_first ? format_number(ich_first->t) : "-", qual.violated() ? "yes" : "none",
                     format_number(qual.mean_h_final_half), format_number(cons.mean_h_final_half), t));
}

void criterion_crisis() {
  const auto s = crisis();
  const auto rec = run(s);
  const bool moratorium = rec.has_event(EventKind::MoratoriumStart);
  std::string reentry = "never";
  bool reentered = false;
  for (const auto& sample : rec.samples) {
    if (sample.x >= s.bounds.x_lo) {
      reentered = true;
      reentry = format_number(sample.t);
      break;
    }
  }
  double min_growth_gap = std::numeric_limits<double>::infinity();
  for (const auto& sample : rec.samples) {
    if (sample.x < s.bounds.x_lo) {
      min_growth_gap = std::min(min_growth_gap, s.recruitment()(sample.x) - sample.h);
    }
  }
  report(6, "crisis-recovery", moratorium && reentered,
         fmt::format("moratorium triggered={} ; x >= x_lo first at t={} ; min R(x)-h while x < x_lo = {} "
                     "(a moratorium needs a declining stock below the floor)",
                     moratorium ? "yes" : "no", reentry, format_number(min_growth_gap)));
}

void criterion_integrator() {
  double worst = 0.0;
  std::string worst_run;
  auto check = [&](const char* name, Scenario s) {
    const double coarse = run(s).terminal_x;
    s.sim.dt /= 2.0;
    const double fine = run(s).terminal_x;
    const double rel = std::abs(coarse - fine) / std::abs(fine);
    if (rel >= worst) {
      worst = rel;
      worst_run = name;
    }
  };
  check("conservative", with_strategy(Strategy::Conservative));
  check("ichthyocentric", with_strategy(Strategy::Ichthyocentric));
  check("qualitative", with_strategy(Strategy::Qualitative));
  check("crisis", crisis());

  Scenario free = with_strategy(Strategy::Qualitative);
  free.sim.x0 = 0.3;
  free.sim.horizon = 30.0;
  free.sim.forced_moratorium = true;
  const auto rec = run(free);
  const double g = free.growth;
  const double k = free.capacity;
  double analytic_err = 0.0;
  for (const auto& sample : rec.samples) {
    const double exact = k / (1.0 + (k / free.sim.x0 - 1.0) * std::exp(-g * sample.t));
    analytic_err = std::max(analytic_err, std::abs(sample.x - exact) / exact);
  }
  report(7, "integrator-convergence", worst < 1e-6 && analytic_err < 1e-8,
         fmt::format("worst dt-halving change {:.3g} ({}) ; logistic segment max relative error {:.3g}", worst,
                     worst_run, analytic_err));
}

void criterion_determinism() {
#ifdef FISHVIA_CLI
  const fs::path work = fs::current_path() / "acceptance_work";
  fs::remove_all(work);
  const std::string cli = FISHVIA_CLI;
  auto sh = [&](const std::string& args) {
    const std::string cmd = fmt::format("\"{}\" {} > /dev/null 2>&1", cli, args);
    return std::system(cmd.c_str());
  };
  bool identical = true;
  for (const char* name : {"conservative", "ichthyocentric", "qualitative"}) {
    Scenario s = load_scenario(kCanonical);
    s.strategy = parse_strategy(name);
    const fs::path cfg = work / fmt::format("{}.ini", name);
    write_text(cfg, serialize(s));
    const int a = sh(fmt::format("simulate --config \"{}\" --out \"{}\"", cfg.string(), (work / name / "a").string()));
    const int b = sh(fmt::format("simulate --config \"{}\" --out \"{}\"", cfg.string(), (work / name / "b").string()));
    for (const char* file : {"trajectory.csv", "events.json"}) {
      const auto x = slurp(work / name / "a" / file);
      identical = identical && a == 0 && b == 0 && !x.empty() && x == slurp(work / name / "b" / file);
    }
  }
  const int verify = sh("verify");
  report(8, "determinism-and-format", identical && verify == 0,
         fmt::format("repeated simulate outputs byte-identical={} ; verify exit status {}", identical ? "yes" : "no",
                     verify));
#else
  report(8, "determinism-and-format", false, "command-line tool not built");
#endif
}

}  // namespace

int main() {
  try {
    criterion_nash();
    criterion_domain();
    criterion_thresholds();
    criterion_levels();
    criterion_strategies();
    criterion_crisis();
    criterion_integrator();
    criterion_determinism();
  } catch (const std::exception& e) {
    fmt::print("FAIL acceptance aborted: {}\n", e.what());
    return 1;
  }
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
