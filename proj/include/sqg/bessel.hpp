// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "sqg/common.hpp"

namespace sqg {

inline double bessel_j(int m, double x) { return std::cyl_bessel_j(m, x); }

// J_m'(x) = (J_{m-1}(x) - J_{m+1}(x))/2; J_0' = -J_1.
inline double bessel_j_prime(int m, double x) {
  if (m == 0) return -std::cyl_bessel_j(1, x);
  return 0.5 * (std::cyl_bessel_j(m - 1, x) - std::cyl_bessel_j(m + 1, x));
}

// k-th positive zero j_{m,k} of J_m (k >= 1), bracket scan + Newton with
// bisection fallback, to ~1e-13 relative.
inline double bessel_zero(int m, int k) {
  require(m >= 0 && k >= 1, "bessel_zero: m >= 0, k >= 1 required");
  // McMahon asymptotic start for the k-th zero.
  const double beta = (k + 0.5 * m - 0.25) * kPi;
  const double mu = 4.0 * m * m;
  double guess = beta - (mu - 1.0) / (8.0 * beta);
  // Walk zeros from below so we can't skip or double-count near m ~ k.
  double a = (m == 0) ? 1e-8 : std::max(1e-8, 0.5 * m);
  double fa = bessel_j(m, a);
  int found = 0;
  double step = std::max(0.05, 0.02 * std::max(1.0, guess / std::max(1, k)));
  double lo = a, hi = a;
  while (found < k) {
    double b = a + step;
    double fb = bessel_j(m, b);
    if (fa == 0.0) {
      ++found;
      lo = hi = a;
    } else if (fa * fb < 0.0) {
      ++found;
      lo = a;
      hi = b;
    }
    a = b;
    fa = fb;
    check_runtime(a < guess + 20.0 * kPi * (k + m + 2), "bessel_zero: bracket scan failed");
  }
  // Newton polished, guarded by the bracket.
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double f = bessel_j(m, x);
    double df = bessel_j_prime(m, x);
    double xn = x - f / df;
    if (!(xn > lo && xn < hi)) {
      // bisect
      if (bessel_j(m, lo) * f < 0.0)
        hi = x;
      else
        lo = x;
      xn = 0.5 * (lo + hi);
    }
    if (std::abs(xn - x) <= 1e-14 * std::abs(xn)) {
      x = xn;
      break;
    }
    x = xn;
  }
  return x;
}

}  // namespace sqg
