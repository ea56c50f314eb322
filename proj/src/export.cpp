#include "fishvia/export.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

namespace fishvia {

namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string trajectory_csv(const TrajectoryRecord& record) {
  std::string out = "t,x,r,h,q1,q2,regime,region,maturity,viable_eco,viable_econ\n";
  out.reserve(record.samples.size() * 160);
  for (const auto& s : record.samples) {
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{},{},{},{}\n",
                   s.t, s.x, s.r, s.h, s.q1, s.q2, s.regime_tag(), to_string(s.region),
                   to_string(s.maturity), s.viable_eco ? 1 : 0, s.viable_econ ? 1 : 0);
  }
  return out;
}

std::string events_json(const TrajectoryRecord& record) {
  ordered_json doc;
  ordered_json events = ordered_json::array();
  for (const auto& e : record.events) {
    ordered_json item;
    item["t"] = e.t;
    item["kind"] = std::string(to_string(e.kind));
    if (!e.which.empty()) item["which"] = e.which;
    events.push_back(std::move(item));
  }
  doc["events"] = std::move(events);
  if (record.domain) {
    const auto& d = *record.domain;
    doc["viability_domain"] = {
        {"viable", d.viable},
        {"margin_profitable", d.margin_profitable},
        {"margin_sustainable", d.margin_sustainable},
        {"margin_reducible", d.margin_reducible},
    };
  } else {
    doc["viability_domain"] = nullptr;
  }
  const auto first = record.first_violation();
  doc["first_violation_t"] = first ? ordered_json(first->t) : ordered_json(nullptr);
  doc["terminal_x"] = record.terminal_x;
  doc["mean_h_final_half"] = record.mean_h_final_half;
  return doc.dump(2) + "\n";
}

std::string phase_csv(const std::vector<PhaseRow>& rows) {
  std::string out = "x,r,h,regime,growth_sign,r_hat,r_bar,r_lo,region\n";
  out.reserve(rows.size() * 150);
  for (const auto& row : rows) {
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{}\n",
                   row.x, row.r, row.h, to_string(row.regime), row.growth_sign, row.r_hat,
                   row.r_bar, row.r_lo, to_string(row.region));
  }
  return out;
}

std::string levels_json(const CriticalLevels& levels, const ViabilityBounds& bounds) {
  ordered_json doc;
  doc["a"] = optional_number(levels.a);
  doc["b"] = optional_number(levels.b);
  doc["c"] = optional_number(levels.c);
  doc["x_lo"] = bounds.x_lo;
  doc["h_lo"] = bounds.h_lo;
  doc["case_order"] = std::string(to_string(levels.case_order));
  doc["rbar_rhat_crossings"] = levels.rbar_rhat_crossings;
  doc["diagnostics"] = levels.diagnostics;
  return doc.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& result) {
  std::string out;
  for (const auto& name : result.axis_names) out += name + ",";
  out += "status,domain_viable,violated,first_violation_t,first_violation,terminal_x,mean_h,error\n";
  for (const auto& cell : result.cells) {
    for (const auto& v : cell.values) out += v + ",";
    const auto& s = cell.summary;
    if (!s.ok) {
      std::string msg = s.error;
      for (auto& ch : msg) {
        if (ch == '"') ch = '\'';
        if (ch == '\n') ch = ' ';
      }
      out += fmt::format("error,,,,,,,\"{}\"\n", msg);
      continue;
    }
    const std::string domain = s.domain_viable ? (*s.domain_viable ? "1" : "0") : "";
    const std::string first = s.first_violation_t ? format_number(*s.first_violation_t) : "";
    out += fmt::format("ok,{},{},{},{},{:.17g},{:.17g},\n", domain, s.violated ? 1 : 0, first,
                       s.first_violation_which, s.terminal_x, s.mean_h);
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("failed while writing {}", path.string()));
}

}  // namespace fishvia
