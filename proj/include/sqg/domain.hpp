// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>

#include "sqg/common.hpp"

namespace sqg {

enum class Shape { rectangle, disk };

// Geometry of the computational domain. Base dimensions are stored separately
// from scale_factor so that rescale(rescale(D,a),b) == rescale(D,a*b) holds
// exactly in the stored parameters. The effective domain is
// Omega_eps = eps^{-1} Omega with eps = 1/scale_factor, i.e. lengths multiply
// by scale_factor.
struct DomainSpec {
  Shape shape = Shape::rectangle;
  double base_lx = 0.0;
  double base_ly = 0.0;
  double base_radius = 0.0;
  double scale_factor = 1.0;

  static DomainSpec rectangle(double lx, double ly) {
    require(lx > 0.0 && ly > 0.0, "rectangle: sides must be positive");
    DomainSpec d;
    d.shape = Shape::rectangle;
    d.base_lx = lx;
    d.base_ly = ly;
    return d;
  }

  static DomainSpec disk(double r) {
    require(r > 0.0, "disk: radius must be positive");
    DomainSpec d;
    d.shape = Shape::disk;
    d.base_radius = r;
    return d;
  }

  // Omega -> s^{-1} Omega (s < 1 shrinks the argument, enlarging the domain).
  DomainSpec rescaled(double s) const {
    require(s > 0.0, "rescaled: factor must be positive");
    DomainSpec d = *this;
    d.scale_factor = scale_factor / s;
    return d;
  }

  double lx() const { return base_lx * scale_factor; }
  double ly() const { return base_ly * scale_factor; }
  double radius() const { return base_radius * scale_factor; }

  double area() const {
    return shape == Shape::rectangle ? lx() * ly() : kPi * sq(radius());
  }
  double diameter() const {
    return shape == Shape::rectangle ? std::hypot(lx(), ly()) : 2.0 * radius();
  }
  double inradius() const {
    return shape == Shape::rectangle ? 0.5 * std::min(lx(), ly()) : radius();
  }

  bool contains(Vec2 p) const {
    if (shape == Shape::rectangle)
      return p.x >= 0.0 && p.x <= lx() && p.y >= 0.0 && p.y <= ly();
    return p.norm() <= radius();
  }

  double boundary_distance(Vec2 p) const {
    if (shape == Shape::rectangle) {
      double dx = std::min(p.x, lx() - p.x);
      double dy = std::min(p.y, ly() - p.y);
      return std::min(dx, dy);
    }
    return radius() - p.norm();
  }

  // Nearest point of the closed domain.
  Vec2 clamp(Vec2 p) const {
    if (shape == Shape::rectangle)
      return {std::clamp(p.x, 0.0, lx()), std::clamp(p.y, 0.0, ly())};
    double r = p.norm();
    if (r <= radius() || r == 0.0) return p;
    return p * (radius() / r);
  }

  Vec2 center() const {
    return shape == Shape::rectangle ? Vec2{0.5 * lx(), 0.5 * ly()} : Vec2{0.0, 0.0};
  }
};

}  // namespace sqg
