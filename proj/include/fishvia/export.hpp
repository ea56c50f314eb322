#pragma once

// Plot-ready CSV and JSON. Numbers are written with 17 significant digits,
// '.' as decimal separator and '\n' line endings, so identical runs give
// identical bytes.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fishvia/simulation.hpp"
#include "fishvia/sweep.hpp"
#include "fishvia/viability.hpp"

namespace fishvia {

std::string format_number(double v);

std::string trajectory_csv(const TrajectoryRecord& record);
std::string events_json(const TrajectoryRecord& record);
std::string phase_csv(const std::vector<PhaseRow>& rows);
std::string levels_json(const CriticalLevels& levels, const ViabilityBounds& bounds);
std::string sweep_csv(const SweepResult& result);

/// Writes `content` to `path`, creating parent directories. Throws
/// std::runtime_error on failure.
void write_text(const std::filesystem::path& path, std::string_view content);

}  // namespace fishvia
