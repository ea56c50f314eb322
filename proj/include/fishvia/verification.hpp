#pragma once

// Randomized equivalence suites: closed forms against the brute-force
// negotiation oracle, the viability-domain test against an existence search,
// and the two threshold biconditionals.

#include <cstdint>
#include <string>
#include <vector>

#include "fishvia/bioeconomic.hpp"
#include "fishvia/viability.hpp"

namespace fishvia {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct SuiteResult {
  std::string name;
  long total = 0;     // instances checked
  long passed = 0;
  long excluded = 0;  // dropped by the suite's margin filter
  double seconds = 0.0;
  std::string note;
  std::vector<std::string> failures;  // first few, for diagnosis

  bool ok() const { return total > 0 && passed == total; }
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Instances per suite; 0 keeps each suite's default size.
  long instances = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

SuiteResult verify_nash_agreement(const VerifyOptions& opt);
SuiteResult verify_unilateral_optimality(const VerifyOptions& opt);
SuiteResult verify_domain_equivalence(const VerifyOptions& opt);
SuiteResult verify_economic_threshold(const VerifyOptions& opt);
SuiteResult verify_recruitment_threshold(const VerifyOptions& opt);
SuiteResult verify_monotonicity(const VerifyOptions& opt);
SuiteResult verify_harvest_shape(const VerifyOptions& opt);

std::vector<SuiteResult> verify_all(const VerifyOptions& opt);

/// Brute-force form of the viability-domain test: at x_lo, some r >= 0 gives
/// h_lo <= h <= R(x_lo) (4096-point scan plus refinement), and at 64 stocks
/// above x_lo some r gives h >= h_lo.
bool brute_force_viable(const EconParams& params, const Recruitment& rec,
                        const ViabilityBounds& bounds);

/// True when the deviation-free quotas at x are non-negative and the interior
/// binding quotas at (x, r) are too, i.e. no group is priced out.
bool interior_instance(const EconParams& params, double x, double r);

}  // namespace fishvia
