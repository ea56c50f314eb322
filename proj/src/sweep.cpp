#include "fishvia/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace fishvia {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? at : at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

std::optional<double> as_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> as_count(std::string_view s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<SweepAxis> parse_axes(std::string_view spec) {
  std::vector<SweepAxis> axes;
  if (spec.empty()) return axes;
  long cells = 1;
  for (auto item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument(fmt::format("axis '{}' must look like FIELD=LO:HI:N", item));
    }
    SweepAxis axis;
    axis.field = resolve_field(item.substr(0, eq));
    if (std::any_of(axes.begin(), axes.end(), [&](const SweepAxis& a) { return a.field == axis.field; })) {
      throw std::invalid_argument(fmt::format("axis field '{}' given twice", axis.field));
    }
    const auto parts = split(item.substr(eq + 1), ':');
    const auto lo = parts.size() == 3 ? as_double(parts[0]) : std::nullopt;
    const auto hi = parts.size() == 3 ? as_double(parts[1]) : std::nullopt;
    const auto n = parts.size() == 3 ? as_count(parts[2]) : std::nullopt;
    if (lo && hi && n) {
      const long count = n.value_or(0);
      if (count < 1) throw std::invalid_argument(fmt::format("axis '{}' needs N >= 1", axis.field));
      if (count > kMaxSweepCells) throw std::invalid_argument("sweep exceeds 1e6 cells");
      for (long k = 0; k < count; ++k) {
        const double v =
            count == 1 ? *lo : *lo + (*hi - *lo) * static_cast<double>(k) / static_cast<double>(count - 1);
        axis.values.push_back(fmt::format("{:.17g}", v));
      }
    } else {
      for (auto p : parts) {
        if (p.empty()) throw std::invalid_argument(fmt::format("axis '{}' has an empty value", axis.field));
        axis.values.emplace_back(p);
      }
    }
    cells *= static_cast<long>(axis.values.size());
    if (cells > kMaxSweepCells) throw std::invalid_argument("sweep exceeds 1e6 cells");
    axes.push_back(std::move(axis));
  }
  return axes;
}

CellSummary summarize(const Scenario& scenario) {
  CellSummary out;
  try {
    scenario.validate();
    const auto rec = scenario.recruitment();
    const auto run = simulate(scenario.econ, rec, scenario.bounds, scenario.strategy,
                              scenario.control, scenario.sim);
    if (run.domain) out.domain_viable = run.domain->viable;
    if (auto v = run.first_violation()) {
      out.violated = true;
      out.first_violation_t = v->t;
      out.first_violation_which = v->which;
    }
    out.terminal_x = run.terminal_x;
    out.mean_h = run.mean_h_final_half;
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

SweepResult sweep(const Scenario& base, const std::vector<SweepAxis>& axes, unsigned threads) {
  SweepResult result;
  long total = 1;
  for (const auto& a : axes) {
    result.axis_names.push_back(a.field);
    total *= static_cast<long>(a.values.size());
    if (total > kMaxSweepCells) throw std::invalid_argument("sweep exceeds 1e6 cells");
  }
  result.cells.resize(static_cast<std::size_t>(total));

  auto run_cell = [&](long index) {
    SweepCell& cell = result.cells[static_cast<std::size_t>(index)];
    cell.values.resize(axes.size());
    long rest = index;
    for (std::size_t k = axes.size(); k-- > 0;) {
      const long n = static_cast<long>(axes[k].values.size());
      cell.values[k] = axes[k].values[static_cast<std::size_t>(rest % n)];
      rest /= n;
    }
    Scenario s = base;
    try {
      for (std::size_t k = 0; k < axes.size(); ++k) set_field(s, axes[k].field, cell.values[k]);
    } catch (const std::exception& e) {
      cell.summary.error = e.what();
      return;
    }
    cell.summary = summarize(s);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, total));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long i = next++; i < total; i = next++) run_cell(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

}  // namespace fishvia
