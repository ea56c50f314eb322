#pragma once

// Batch runs over a rectangular grid of scenario fields.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishvia/scenario.hpp"

namespace fishvia {

inline constexpr long kMaxSweepCells = 1'000'000;

struct SweepAxis {
  std::string field;                // fully qualified section.key
  std::vector<std::string> values;  // textual values, applied via set_field
};

/// Parses "FIELD=LO:HI:N[,FIELD=...]". A value list that is not a numeric
/// LO:HI:N triple is taken literally, e.g. "name=conservative:qualitative".
/// An empty spec yields no axes (a single-cell sweep).
std::vector<SweepAxis> parse_axes(std::string_view spec);

struct CellSummary {
  bool ok = false;
  std::string error;
  std::optional<bool> domain_viable;
  bool violated = false;
  std::optional<double> first_violation_t;
  std::string first_violation_which;
  double terminal_x = 0.0;
  double mean_h = 0.0;
};

CellSummary summarize(const Scenario& scenario);

struct SweepCell {
  std::vector<std::string> values;
  CellSummary summary;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<SweepCell> cells;  // first axis varies slowest
};

/// Evaluates every cell, spreading them over `threads` workers (0 picks the
/// hardware concurrency). Cell failures are stored, never thrown.
SweepResult sweep(const Scenario& base, const std::vector<SweepAxis>& axes, unsigned threads = 0);

}  // namespace fishvia
