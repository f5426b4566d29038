// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "sqg/common.hpp"

namespace sqg {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton on the three-term recurrence.
inline QuadRule gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: n >= 1 required");
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    q.x[i] = -z;
    q.x[n - 1 - i] = z;
    q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.w[n - 1 - i] = q.w[i];
  }
  return q;
}

// Same rule mapped to [a,b].
inline QuadRule gauss_legendre(int n, double a, double b) {
  QuadRule q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = mid + half * q.x[i];
    q.w[i] *= half;
  }
  return q;
}

}  // namespace sqg
