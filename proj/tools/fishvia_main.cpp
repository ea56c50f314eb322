// fishvia: viability analysis and closed-loop simulation of a co-managed
// two-group fishery.
//
// Exit status: 0 success (or viable), 2 analytic negative verdict,
// 1 usage or input error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fishvia/export.hpp"
#include "fishvia/scenario.hpp"
#include "fishvia/sweep.hpp"
#include "fishvia/verification.hpp"
#include "fishvia/viability.hpp"

namespace fs = std::filesystem;
using namespace fishvia;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotViable = 2;

std::string show(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("absent");
}

fs::path output_dir(const Scenario& s, const std::string& override_dir) {
  return override_dir.empty() ? fs::path(s.output.dir) : fs::path(override_dir);
}

int cmd_check(const Scenario& s) {
  const auto rec = s.recruitment();
  if (!(derive(s.econ).w > 0.0)) {
    fmt::print(std::cerr, "error: the viability test needs kappa1 or kappa2 positive\n");
    return kInputError;
  }
  const auto report = check_viability_domain(s.econ, rec, s.bounds);
  auto line = [](const char* tag, const char* text, double margin, bool ok) {
    fmt::print("condition {:<5} {:<36} margin {:>24}  {}\n", tag, text, format_number(margin),
               ok ? "holds" : "FAILS");
  };
  fmt::print("x_lo = {}  h_lo = {}\n", format_number(s.bounds.x_lo), format_number(s.bounds.h_lo));
  line("(i)", "r_hat(x_lo) >= r_lo(x_lo)", report.margin_profitable, report.profitable_floor);
  line("(ii)", "R(x_lo) >= h_lo", report.margin_sustainable, report.sustainable_floor);
  line("(iii)", "r_lo(x_lo) >= 0 or r_bar(x_lo) >= 0", report.margin_reducible, report.reducible);
  fmt::print("verdict {}\n", report.viable ? "VIABLE" : "NOT VIABLE");

  const auto levels = critical_levels(s.econ, rec, s.bounds);
  fmt::print("a = {}\nb = {}\nc = {}\ncase {}\n", show(levels.a), show(levels.b), show(levels.c),
             to_string(levels.case_order));
  for (double x : levels.rbar_rhat_crossings) fmt::print("r_bar crosses r_hat at x = {}\n", format_number(x));
  for (const auto& d : levels.diagnostics) fmt::print("note: {}\n", d);
  return report.viable ? kOk : kNotViable;
}

int cmd_simulate(const Scenario& s, const std::string& out) {
  const auto rec = s.recruitment();
  const auto run = simulate(s.econ, rec, s.bounds, s.strategy, s.control, s.sim);
  const fs::path dir = output_dir(s, out);
  write_text(dir / s.output.trajectory, trajectory_csv(run));
  write_text(dir / s.output.events, events_json(run));

  fmt::print("strategy {}  samples {}  events {}\n", to_string(s.strategy), run.samples.size(),
             run.events.size());
  if (const auto v = run.first_violation()) {
    fmt::print("first violation: {} at t = {}\n", v->which, format_number(v->t));
  } else {
    fmt::print("no viability violation\n");
  }
  fmt::print("terminal x = {}\nmean h (final half) = {}\n", format_number(run.terminal_x),
             format_number(run.mean_h_final_half));
  fmt::print("wrote {} and {}\n", (dir / s.output.trajectory).string(), (dir / s.output.events).string());
  return kOk;
}

int cmd_phase(const Scenario& s, const std::string& grid_spec, const std::string& out) {
  const auto grid = GridSpec::parse(grid_spec);
  const auto rec = s.recruitment();
  const auto rows = phase_grid(s.econ, rec, s.bounds, grid);
  const auto levels = critical_levels(s.econ, rec, s.bounds);
  const fs::path dir = output_dir(s, out);
  write_text(dir / s.output.phase, phase_csv(rows));
  write_text(dir / s.output.levels, levels_json(levels, s.bounds));
  fmt::print("{} rows\nwrote {} and {}\n", rows.size(), (dir / s.output.phase).string(),
             (dir / s.output.levels).string());
  return kOk;
}

int cmd_sweep(const Scenario& s, const std::string& axes_spec, const std::string& out, unsigned threads) {
  const auto axes = parse_axes(axes_spec);
  const auto result = sweep(s, axes, threads);
  const fs::path dir = output_dir(s, out);
  write_text(dir / s.output.sweep, sweep_csv(result));
  long failed = 0;
  long violated = 0;
  for (const auto& c : result.cells) {
    if (!c.summary.ok) ++failed;
    if (c.summary.violated) ++violated;
  }
  fmt::print("{} cells, {} with violations, {} failed\nwrote {}\n", result.cells.size(), violated, failed,
             (dir / s.output.sweep).string());
  return kOk;
}

int cmd_verify(std::uint64_t seed, long instances, unsigned threads) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.instances = instances;
  opt.threads = threads;
  bool all = true;
  for (const auto& r : verify_all(opt)) {
    all = all && r.ok();
    fmt::print("{:<30} {:>6}/{:<6} excluded {:<5} {:>7.2f}s  {}\n", r.name, r.passed, r.total, r.excluded,
               r.seconds, r.ok() ? "PASS" : "FAIL");
    if (!r.note.empty()) fmt::print("    {}\n", r.note);
    for (const auto& f : r.failures) fmt::print("    failed: {}\n", f);
  }
  fmt::print("{}\n", all ? "all suites pass" : "some suites FAIL");
  return all ? kOk : kNotViable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Viability analysis and simulation of a co-managed fishery"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string grid = "0.1:2:0:1.5:200:200";
  std::string axes;
  std::uint64_t seed = kDefaultSeed;
  long instances = 0;
  unsigned threads = 0;

  auto* check = app.add_subcommand("check", "Test whether [x_lo, inf) is a viability domain");
  auto* sim = app.add_subcommand("simulate", "Run the configured strategy and write the trajectory");
  auto* phase = app.add_subcommand("phase", "Write a phase-plane grid for plotting");
  auto* sw = app.add_subcommand("sweep", "Simulate every cell of a parameter grid");
  auto* verify = app.add_subcommand("verify", "Run the randomized oracle suites");

  for (auto* cmd : {check, sim, phase, sw}) {
    cmd->add_option("--config", config, "Scenario file")->required();
  }
  for (auto* cmd : {sim, phase, sw}) {
    cmd->add_option("--out", out, "Output directory (overrides [output] dir)");
  }
  phase->add_option("--grid", grid, "XMIN:XMAX:RMIN:RMAX:NX:NR")->capture_default_str();
  sw->add_option("--axes", axes, "FIELD=LO:HI:N[,FIELD=...]");
  for (auto* cmd : {sw, verify}) {
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_option("--instances", instances, "Instances per suite (0 = suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*verify) return cmd_verify(seed, instances, threads);
    const Scenario scenario = load_scenario(config);
    if (*check) return cmd_check(scenario);
    if (*sim) return cmd_simulate(scenario, out);
    if (*phase) return cmd_phase(scenario, grid, out);
    if (*sw) return cmd_sweep(scenario, axes, out, threads);
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kInputError;
  }
  return kInputError;
}
