// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles used by the test suites. Everything here deliberately
// avoids the library's transform/quadrature paths.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sqg/basis.hpp"

namespace oracle {

// Power-series J0, independent of std::cyl_bessel_j. Good to ~1e-14 for x < 12.
inline double j0_series(double x) {
  double q = -0.25 * x * x;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return acc;
}

// First positive root of J0 by bisection on the series.
inline double j0_first_root() {
  double a = 2.0, b = 3.0;
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (j0_series(a) * j0_series(m) <= 0.0)
      b = m;
    else
      a = m;
  }
  return 0.5 * (a + b);
}

// Direct Gram-projection analysis: c_k = sum_i w_i v_i e_k(x_i).
inline sqg::SpectralField dense_analyze(const sqg::EigenBasis& b, const sqg::GridField& g) {
  sqg::SpectralField f{&b, std::vector<double>(b.num_modes(), 0.0)};
  for (int k = 0; k < b.num_modes(); ++k) {
    double acc = 0.0;
    for (int i = 0; i < b.num_nodes(); ++i)
      acc += b.weight(i) * g.v[i] * b.eval_mode(k, b.node(i));
    f.c[k] = acc;
  }
  return f;
}

// Direct synthesis: v_i = sum_k c_k e_k(x_i).
inline sqg::GridField dense_synthesize(const sqg::EigenBasis& b, const sqg::SpectralField& f) {
  sqg::GridField g{&b, std::vector<double>(b.num_nodes(), 0.0)};
  for (int k = 0; k < b.num_modes(); ++k) {
    if (f.c[k] == 0.0) continue;
    for (int i = 0; i < b.num_nodes(); ++i) g.v[i] += f.c[k] * b.eval_mode(k, b.node(i));
  }
  return g;
}

inline sqg::SpectralField random_field(const sqg::EigenBasis& b, unsigned seed,
                                       double amp = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  sqg::SpectralField f{&b, std::vector<double>(b.num_modes())};
  for (double& c : f.c) c = dist(rng);
  double n2 = 0.0;
  for (double c : f.c) n2 += c * c;
  double scale = amp / std::sqrt(n2);
  for (double& c : f.c) c *= scale;
  return f;
}

// Centered-difference divergence of a velocity field sampled with point
// evaluations; valid at strictly interior probe points.
inline double fd_divergence(const sqg::EigenBasis& b, const sqg::SpectralField& theta,
                            sqg::Vec2 p, double h) {
  auto u = [&](sqg::Vec2 q) { return b.riesz_velocity_at(theta, q); };
  double dux = (u({p.x + h, p.y}).x - u({p.x - h, p.y}).x) / (2 * h);
  double dwy = (u({p.x, p.y + h}).y - u({p.x, p.y - h}).y) / (2 * h);
  return dux + dwy;
}

// Least-squares slope of log(err) vs log(h).
inline double slope_loglog(const std::vector<double>& h, const std::vector<double>& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    double x = std::log(h[i]), y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
