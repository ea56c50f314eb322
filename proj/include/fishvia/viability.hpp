#pragma once

// Threshold curves on the (stock, recommendation) plane, the viability-domain
// test for [x_lo, inf), the critical stock levels and the qualitative region
// labels used by the rule-based controller.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishvia/bioeconomic.hpp"

namespace fishvia {

struct ViabilityBounds {
  double x_lo = 1.0;  // minimum acceptable stock
  double h_lo = 0.4;  // minimum acceptable total harvest

  void validate() const;
};

/// Largest binding recommendation that keeps the stock from declining.
/// Goes to +inf as x -> 0 and may be negative.
double r_bar(const EconParams& params, const Recruitment& rec, double x);

/// Smallest binding recommendation that still yields h >= h_lo.
/// Strictly decreasing in x.
double r_lo(const EconParams& params, const ViabilityBounds& bounds, double x);

struct ViabilityReport {
  bool viable = false;
  bool profitable_floor = false;  // (i)   r_hat(x_lo) >= r_lo(x_lo)
  bool sustainable_floor = false; // (ii)  h_lo <= R(x_lo)
  bool reducible = false;         // (iii) r_lo(x_lo) >= 0 or r_bar(x_lo) >= 0
  double margin_profitable = 0.0; // r_hat - r_lo at x_lo
  double margin_sustainable = 0.0;// R - h_lo at x_lo
  double margin_reducible = 0.0;  // max(r_lo, r_bar) at x_lo
};

/// Decides whether [x_lo, inf) is a viability domain of the negotiated
/// dynamics. Needs a positive deviation weight.
ViabilityReport check_viability_domain(const EconParams& params, const Recruitment& rec,
                                       const ViabilityBounds& bounds);

enum class CaseOrder { ALessB, BLessA, Degenerate };

std::string_view to_string(CaseOrder order);

struct CriticalLevels {
  std::optional<double> a;  // r_lo(a) == r_hat(a)
  std::optional<double> b;  // smaller root of R(x) == h_lo
  std::optional<double> c;  // larger root of R(x) == h_lo
  CaseOrder case_order = CaseOrder::Degenerate;
  /// Crossings of r_bar and r_hat on (0, 4K]; informative only.
  std::vector<double> rbar_rhat_crossings;
  std::vector<std::string> diagnostics;
};

CriticalLevels critical_levels(const EconParams& params, const Recruitment& rec,
                               const ViabilityBounds& bounds);

// ---------------------------------------------------------------------------
// Qualitative regions

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

Sign sign_of(double value, double tolerance = 0.0);

enum class Region {
  R0_NonBinding,
  R1_GrowingAboveHarvest,
  R2_GrowingBelowHarvest,
  R3_DecliningAboveHarvest,
  R4_DecliningBelowHarvest,
};

enum class Maturity { Emerging, Mature };

std::string_view to_string(Region region);
std::string_view to_string(Maturity maturity);

struct QualitativeObservation {
  Sign x_trend = Sign::Positive;
  Sign h_vs_hlo = Sign::Positive;
  bool binding = true;
};

struct RegionLabel {
  Region region = Region::R1_GrowingAboveHarvest;
  Maturity maturity = Maturity::Emerging;

  bool operator==(const RegionLabel&) const = default;
};

/// Stock trend over one control interval. Changes within the deadband count
/// as increasing.
Sign trend_sign(double x_before, double x_after, double deadband);

/// Region of the rule table. A zero trend counts as growing and a harvest
/// exactly at the floor counts as above it.
RegionLabel classify_region(const QualitativeObservation& obs, Maturity maturity);

// ---------------------------------------------------------------------------
// Threshold statements as executable checks

struct FlagPair {
  bool claim = false;         // closed-form side
  bool ground_truth = false;  // evaluated through the negotiated harvest
  bool agree() const { return claim == ground_truth; }
};

/// Recommending R(x) is economically viable iff R(x) >= r_lo(x), for x in a
/// viability domain.
FlagPair economic_threshold_check(const EconParams& params, const Recruitment& rec,
                     const ViabilityBounds& bounds, double x);

/// h(x, R(x)) <= R(x) iff R(x) >= r_hat(x).
FlagPair recruitment_threshold_check(const EconParams& params, const Recruitment& rec, double x);

// ---------------------------------------------------------------------------
// Phase-plane grid

struct GridSpec {
  double x_min = 0.1;
  double x_max = 2.0;
  double r_min = 0.0;
  double r_max = 1.5;
  int nx = 200;
  int nr = 200;

  void validate() const;
  /// Parses "XMIN:XMAX:RMIN:RMAX:NX:NR".
  static GridSpec parse(std::string_view text);
};

struct PhaseRow {
  double x = 0.0;
  double r = 0.0;
  double h = 0.0;
  Regime regime = Regime::Binding;
  int growth_sign = 0;  // sign(R(x) - h)
  double r_hat = 0.0;
  double r_bar = 0.0;
  double r_lo = 0.0;
  Region region = Region::R0_NonBinding;
};

/// Rows ordered with r varying fastest.
std::vector<PhaseRow> phase_grid(const EconParams& params, const Recruitment& rec,
                                 const ViabilityBounds& bounds, const GridSpec& grid);

}  // namespace fishvia
