// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// Dirichlet heat kernel p_t(x,y) = sum_k e^{-lambda_k t} e_k(x) e_k(y) under
// the basis truncation. Rectangles factorize into 1D sine sums; disks sum the
// (m,k) ladder with the cos(m dphi) pairing.
#pragma once

#include <cmath>
#include <vector>

#include "sqg/basis.hpp"

namespace sqg {

namespace detail {

// 1D Dirichlet heat kernel on (0,L) with M modes; drops terms below
// 1e-16 * leading term.
inline double heat1d(double t, double a, double b, double L, int M) {
  const double c = sq(kPi / L) * t;
  double acc = 0.0;
  for (int m = 1; m <= M; ++m) {
    double decay = c * (sq(static_cast<double>(m)) - 1.0);
    if (decay > 37.0) break;  // e^-37 ~ 8e-17 relative to mode 1
    acc += std::exp(-c * sq(static_cast<double>(m))) * std::sin(m * kPi * a / L) *
           std::sin(m * kPi * b / L);
  }
  return acc * 2.0 / L;
}

// integral over (0,L) of heat1d(t, a, .)
inline double heat1d_mass(double t, double a, double L, int M) {
  const double c = sq(kPi / L) * t;
  double acc = 0.0;
  for (int m = 1; m <= M; m += 2) {  // even modes integrate to zero
    double decay = c * (sq(static_cast<double>(m)) - 1.0);
    if (decay > 37.0) break;
    acc += std::exp(-c * sq(static_cast<double>(m))) * std::sin(m * kPi * a / L) *
           (2.0 * L / (m * kPi));
  }
  return acc * 2.0 / L;
}

}  // namespace detail

inline double heat_kernel(const EigenBasis& b, double t, Vec2 x, Vec2 y) {
  require(t > 0.0, "heat_kernel: t > 0 required");
  if (b.dom.shape == Shape::rectangle) {
    return detail::heat1d(t, x.x, y.x, b.dom.lx(), b.trunc.a) *
           detail::heat1d(t, x.y, y.y, b.dom.ly(), b.trunc.b);
  }
  const double R = b.dom.radius();
  double r1 = x.norm(), r2 = y.norm();
  double dphi = std::atan2(x.y, x.x) - std::atan2(y.y, y.x);
  double acc = 0.0;
  const double lam0 = b.lambda_min();
  for (int m = 0; m <= b.trunc.a; ++m) {
    for (int k = 1; k <= b.trunc.b; ++k) {
      double z = b.zeros[m * b.trunc.b + (k - 1)];
      double l = sq(z / R);
      if ((l - lam0) * t > 37.0) continue;
      double jn = std::abs(bessel_j(m + 1, z));
      double n2 = (m == 0) ? 1.0 / (kPi * sq(R * jn)) : 2.0 / (kPi * sq(R * jn));
      double term = std::exp(-l * t) * n2 * bessel_j(m, z * r1 / R) *
                    bessel_j(m, z * r2 / R);
      acc += (m == 0) ? term : term * std::cos(m * dphi);
    }
  }
  return acc;
}

// integral over Omega of p_t(x, .)
inline double heat_mass(const EigenBasis& b, double t, Vec2 x) {
  require(t > 0.0, "heat_mass: t > 0 required");
  if (b.dom.shape == Shape::rectangle) {
    return detail::heat1d_mass(t, x.x, b.dom.lx(), b.trunc.a) *
           detail::heat1d_mass(t, x.y, b.dom.ly(), b.trunc.b);
  }
  const double R = b.dom.radius();
  double r1 = x.norm();
  double acc = 0.0;
  for (int k = 1; k <= b.trunc.b; ++k) {
    double z = b.zeros[k - 1];
    double l = sq(z / R);
    if ((l - b.lambda_min()) * t > 37.0) break;
    double jn = std::abs(bessel_j(1, z));
    double n2 = 1.0 / (kPi * sq(R * jn));
    // int_0^R J_0(z r / R) r dr = R^2 J_1(z) / z
    double integral = 2.0 * kPi * sq(R) * bessel_j(1, z) / z;
    acc += std::exp(-l * t) * n2 * bessel_j(0, z * r1 / R) * integral;
  }
  return acc;
}

// Smallest t at which the truncated eigen-sum resolves the kernel: the
// discarded tail must sit below ~1e-16 of the retained leading term.
inline double heat_min_time(const EigenBasis& b) {
  return 37.0 / (b.lambda_max() - b.lambda_min());
}

}  // namespace sqg
