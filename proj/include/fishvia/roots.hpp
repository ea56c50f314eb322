#pragma once

#include <optional>

namespace fishvia {

/// Bracketed bisection down to adjacent doubles. Returns nullopt when f(lo)
/// and f(hi) share a strict sign.
template <class F>
std::optional<double> bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) return std::nullopt;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fishvia
