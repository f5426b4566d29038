// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqg {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double a) const { return {a * x, a * y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double a, Vec2 v) { return {a * v.x, a * v.y}; }

inline double sq(double a) { return a * a; }

// Precondition failure: caller passed something the operation rejects.
inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

// Runtime failure: quadrature blow-up, NaN state, truncation too small, ...
inline void check_runtime(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

}  // namespace sqg
