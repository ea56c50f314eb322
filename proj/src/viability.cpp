#include "fishvia/viability.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

#include "fishvia/roots.hpp"

namespace fishvia {

void ViabilityBounds::validate() const {
  if (!(x_lo > 0.0) || !std::isfinite(x_lo)) {
    throw std::invalid_argument(fmt::format("x_lo must be positive (got {})", x_lo));
  }
  if (!(h_lo > 0.0) || !std::isfinite(h_lo)) {
    throw std::invalid_argument(fmt::format("h_lo must be positive (got {})", h_lo));
  }
}

namespace {

DerivedCoeffs managed_coeffs(const EconParams& params) {
  const auto d = derive(params);
  if (!(d.w > 0.0)) {
    throw std::domain_error("threshold curves need a positive deviation weight (kappa1 or kappa2)");
  }
  return d;
}

void require_stock(double x) {
  if (!(x > 0.0)) throw std::domain_error(fmt::format("stock must be positive (got {})", x));
}

// Inverse of the binding harvest in r: the recommendation at which h_b
// equals `target`.
double binding_inverse(const EconParams& params, const DerivedCoeffs& d, double target, double x) {
  return (target * (d.w * x + d.bb) + d.v) / (d.w * x) - d.u * params.price / d.w;
}

}  // namespace

double r_bar(const EconParams& params, const Recruitment& rec, double x) {
  require_stock(x);
  const auto d = managed_coeffs(params);
  return binding_inverse(params, d, rec(x), x);
}

double r_lo(const EconParams& params, const ViabilityBounds& bounds, double x) {
  require_stock(x);
  const auto d = managed_coeffs(params);
  return binding_inverse(params, d, bounds.h_lo, x);
}

ViabilityReport check_viability_domain(const EconParams& params, const Recruitment& rec,
                                       const ViabilityBounds& bounds) {
  params.validate();
  bounds.validate();
  const double x = bounds.x_lo;
  const double lower = r_lo(params, bounds, x);
  const double upper = r_bar(params, rec, x);

  ViabilityReport rep;
  rep.margin_profitable = r_hat(params, x) - lower;
  rep.margin_sustainable = rec(x) - bounds.h_lo;
  rep.margin_reducible = std::max(lower, upper);
  rep.profitable_floor = rep.margin_profitable >= 0.0;
  rep.sustainable_floor = rep.margin_sustainable >= 0.0;
  rep.reducible = rep.margin_reducible >= 0.0;
  rep.viable = rep.profitable_floor && rep.sustainable_floor && rep.reducible;
  return rep;
}

std::string_view to_string(CaseOrder order) {
  switch (order) {
    case CaseOrder::ALessB: return "ALessB";
    case CaseOrder::BLessA: return "BLessA";
    case CaseOrder::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

CriticalLevels critical_levels(const EconParams& params, const Recruitment& rec,
                               const ViabilityBounds& bounds) {
  params.validate();
  bounds.validate();
  managed_coeffs(params);

  CriticalLevels out;
  const double cap = rec.capacity();

  // a: r_lo falls from +inf, r_hat rises linearly, so they cross once.
  auto gap = [&](double x) { return r_lo(params, bounds, x) - r_hat(params, x); };
  double hi = 4.0 * cap;
  for (int i = 0; i < 64 && gap(hi) > 0.0; ++i) hi *= 2.0;
  if (hi > 4.0 * cap) {
    out.diagnostics.push_back(fmt::format("level a lies beyond 4K; bracket widened to {}", hi));
  }
  out.a = bisect(gap, 1e-12 * cap, hi);
  if (!out.a) out.diagnostics.emplace_back("level a not found: r_lo stays above r_hat");

  // b, c: R(x) = h_lo, one root on each side of x_MSY.
  const double peak_gap = rec.max_rate() - bounds.h_lo;
  if (std::abs(peak_gap) <= kHarvestTolerance * std::max(1.0, bounds.h_lo)) {
    out.b = rec.x_msy();
    out.c = rec.x_msy();
    out.diagnostics.emplace_back("h_lo equals maximum recruitment: b and c coincide at x_MSY");
  } else if (peak_gap < 0.0) {
    out.diagnostics.push_back(
        fmt::format("levels b, c absent: h_lo={} exceeds maximum recruitment {}", bounds.h_lo, rec.max_rate()));
  } else {
    auto surplus = [&](double x) { return rec(x) - bounds.h_lo; };
    out.b = bisect(surplus, 0.0, rec.x_msy());
    out.c = bisect(surplus, rec.x_msy(), cap);
    if (!out.c) out.c = bisect(surplus, rec.x_msy(), 4.0 * cap);
  }

  if (out.a && out.b && out.c && *out.b < *out.c) {
    if (*out.a < *out.b) {
      out.case_order = CaseOrder::ALessB;
    } else if (*out.b < *out.a) {
      out.case_order = CaseOrder::BLessA;
    }
  }

  // Crossings of r_bar and r_hat, located segment-wise since r_bar need not be
  // monotone.
  constexpr int kSegments = 512;
  auto rbar_gap = [&](double x) { return r_bar(params, rec, x) - r_hat(params, x); };
  const double top = 4.0 * cap;
  double left = top / (8 * kSegments);
  double left_value = rbar_gap(left);
  for (int i = 1; i <= kSegments; ++i) {
    const double right = top * i / kSegments;
    const double right_value = rbar_gap(right);
    if ((left_value < 0.0) != (right_value < 0.0)) {
      if (auto root = bisect(rbar_gap, left, right)) out.rbar_rhat_crossings.push_back(*root);
    }
    left = right;
    left_value = right_value;
  }
  return out;
}

// ---------------------------------------------------------------------------

Sign sign_of(double value, double tolerance) {
  if (std::abs(value) <= tolerance) return Sign::Zero;
  return value > 0.0 ? Sign::Positive : Sign::Negative;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::R0_NonBinding: return "R0";
    case Region::R1_GrowingAboveHarvest: return "R1";
    case Region::R2_GrowingBelowHarvest: return "R2";
    case Region::R3_DecliningAboveHarvest: return "R3";
    case Region::R4_DecliningBelowHarvest: return "R4";
  }
  return "R?";
}

std::string_view to_string(Maturity maturity) {
  return maturity == Maturity::Mature ? "Mature" : "Emerging";
}

Sign trend_sign(double x_before, double x_after, double deadband) {
  return sign_of(x_after - x_before, deadband);
}

RegionLabel classify_region(const QualitativeObservation& obs, Maturity maturity) {
  if (!obs.binding) return {Region::R0_NonBinding, maturity};
  const bool growing = obs.x_trend != Sign::Negative;
  const bool above = obs.h_vs_hlo != Sign::Negative;
  if (growing) {
    return {above ? Region::R1_GrowingAboveHarvest : Region::R2_GrowingBelowHarvest, maturity};
  }
  return {above ? Region::R3_DecliningAboveHarvest : Region::R4_DecliningBelowHarvest, maturity};
}

// ---------------------------------------------------------------------------

FlagPair economic_threshold_check(const EconParams& params, const Recruitment& rec,
                     const ViabilityBounds& bounds, double x) {
  const double growth = rec(x);
  FlagPair out;
  out.claim = growth >= r_lo(params, bounds, x) - kHarvestTolerance;
  out.ground_truth = total_harvest(params, x, growth).h >= bounds.h_lo - kHarvestTolerance;
  return out;
}

FlagPair recruitment_threshold_check(const EconParams& params, const Recruitment& rec, double x) {
  const double growth = rec(x);
  FlagPair out;
  out.claim = growth >= r_hat(params, x) - kHarvestTolerance;
  out.ground_truth = total_harvest(params, x, growth).h <= growth + kHarvestTolerance;
  return out;
}

// ---------------------------------------------------------------------------

void GridSpec::validate() const {
  if (nx < 1 || nr < 1) throw std::invalid_argument("grid resolution must be at least 1 per axis");
  if (static_cast<long long>(nx) * nr > 100'000'000LL) {
    throw std::invalid_argument("grid has more than 1e8 cells");
  }
  if (!(x_min > 0.0)) throw std::invalid_argument("grid x range must be positive");
  if (!(r_min >= 0.0)) throw std::invalid_argument("grid r range must be non-negative");
  auto check_axis = [](double lo, double hi, int n, const char* axis) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument(fmt::format("grid {} range must be finite", axis));
    }
    if (n == 1 ? lo != hi : !(lo < hi)) {
      throw std::invalid_argument(
          fmt::format("degenerate grid on {}: need min < max (or min == max with one point)", axis));
    }
  };
  check_axis(x_min, x_max, nx, "x");
  check_axis(r_min, r_max, nr, "r");
}

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 6) {
    throw std::invalid_argument(fmt::format("grid spec '{}' must be XMIN:XMAX:RMIN:RMAX:NX:NR", text));
  }
  auto number = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      const std::string str(s);
      const double v = std::stod(str, &used);
      if (used != str.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument(fmt::format("grid spec field '{}' is not a number", s));
    }
  };
  auto count = [&](std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw std::invalid_argument(fmt::format("grid spec count '{}' is not an integer", s));
    }
    return v;
  };
  GridSpec g;
  g.x_min = number(parts[0]);
  g.x_max = number(parts[1]);
  g.r_min = number(parts[2]);
  g.r_max = number(parts[3]);
  g.nx = count(parts[4]);
  g.nr = count(parts[5]);
  g.validate();
  return g;
}

std::vector<PhaseRow> phase_grid(const EconParams& params, const Recruitment& rec,
                                 const ViabilityBounds& bounds, const GridSpec& grid) {
  params.validate();
  bounds.validate();
  grid.validate();
  auto axis = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };

  std::vector<PhaseRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.nx) * grid.nr);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = axis(grid.x_min, grid.x_max, grid.nx, i);
    const double growth = rec(x);
    const double rh = r_hat(params, x);
    const double rb = r_bar(params, rec, x);
    const double rl = r_lo(params, bounds, x);
    for (int j = 0; j < grid.nr; ++j) {
      const double r = axis(grid.r_min, grid.r_max, grid.nr, j);
      const auto outcome = total_harvest(params, x, r);
      PhaseRow row;
      row.x = x;
      row.r = r;
      row.h = outcome.h;
      row.regime = outcome.regime;
      const Sign growth_sign = sign_of(growth - outcome.h, kHarvestTolerance * std::max(1.0, growth));
      row.growth_sign = static_cast<int>(growth_sign);
      row.r_hat = rh;
      row.r_bar = rb;
      row.r_lo = rl;
      const QualitativeObservation obs{
          growth_sign,
          sign_of(outcome.h - bounds.h_lo, kHarvestTolerance),
          outcome.h + kHarvestTolerance >= r,
      };
      row.region = classify_region(obs, Maturity::Emerging).region;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace fishvia
