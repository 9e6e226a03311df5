#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace compsep {

// Standard normal CDF through the complementary error function,
// Phi(x) = erfc(-x / sqrt(2)) / 2. Using erfc rather than 1 + erf keeps
// full relative precision in the lower tail; the absolute error is far
// below 1e-10 everywhere.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Upper tail 1 - Phi(x), without cancellation for large x.
inline double normal_sf(double x) { return normal_cdf(-x); }

inline double normal_cdf(double x, double mean, double sd) { return normal_cdf((x - mean) / sd); }

// Phi^-1(p) by bisection on normal_cdf. The bracket [-40, 40] covers every
// p representable away from 0 and 1; iteration stops once the bracket is
// narrower than 1e-13.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Two-tailed critical value z such that P(|Z| > z) = alpha.
inline double two_tailed_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  return normal_quantile(1.0 - 0.5 * alpha);
}

}  // namespace compsep
