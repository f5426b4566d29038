// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oracles.hpp"
#include "sqg/heat.hpp"
#include "sqg/stinga.hpp"

using namespace sqg;

namespace {

// Method-of-images heat kernel for (0,L), independent of the eigen-sum.
double image_heat1d(double t, double a, double b, double L) {
  double acc = 0.0;
  for (int n = -8; n <= 8; ++n) {
    acc += std::exp(-sq(a - b + 2 * n * L) / (4 * t));
    acc -= std::exp(-sq(a + b + 2 * n * L) / (4 * t));
  }
  return acc / std::sqrt(4 * kPi * t);
}

double image_heat2d(double t, Vec2 x, Vec2 y, double lx, double ly) {
  return image_heat1d(t, x.x, y.x, lx) * image_heat1d(t, x.y, y.y, ly);
}

const EigenBasis& kernel_basis() {
  static EigenBasis b = build_basis(DomainSpec::rectangle(kPi, kPi), {384, 384});
  return b;
}

}  // namespace

TEST_CASE("heat kernel: symmetry, leading-mode asymptotics, image-sum oracle") {
  EigenBasis b = build_basis(DomainSpec::rectangle(kPi, kPi), {32, 32});
  SECTION("symmetry") {
    Vec2 x{1.0, 2.2}, y{2.4, 0.7};
    for (double t : {0.2, 0.7, 3.0})
      REQUIRE(heat_kernel(b, t, x, y) ==
              Catch::Approx(heat_kernel(b, t, y, x)).epsilon(1e-14).margin(1e-300));
  }
  SECTION("large-t limit is the ground mode") {
    Vec2 x{1.3, 1.1}, y{2.0, 2.5};
    double t = 9.0;
    double lead = std::exp(-b.lambda_min() * t) * b.eval_mode(0, x) * b.eval_mode(0, y);
    REQUIRE(heat_kernel(b, t, x, y) == Catch::Approx(lead).epsilon(1e-7));
  }
  SECTION("image-sum oracle at t=0.5, center") {
    Vec2 c{kPi / 2, kPi / 2};
    double got = heat_kernel(b, 0.5, c, c);
    double want = image_heat2d(0.5, c, c, kPi, kPi);
    REQUIRE(got == Catch::Approx(want).epsilon(1e-6));
  }
  SECTION("image-sum oracle at small t needs the big basis") {
    const EigenBasis& kb = kernel_basis();
    Vec2 x{1.2, 1.8}, y{1.5, 1.4};
    for (double t : {3e-3, 1e-2, 5e-2}) {
      double got = heat_kernel(kb, t, x, y);
      double want = image_heat2d(t, x, y, kPi, kPi);
      REQUIRE(got == Catch::Approx(want).epsilon(1e-8));
    }
  }
  SECTION("heat mass stays in (0,1] and decays") {
    Vec2 x{1.9, 1.2};
    double prev = 1.0;
    for (double t : {0.05, 0.2, 0.8, 2.0}) {
      double m = heat_mass(b, t, x);
      REQUIRE(m > 0.0);
      REQUIRE(m <= 1.0 + 1e-12);
      REQUIRE(m <= prev + 1e-12);
      prev = m;
    }
  }
  SECTION("t <= 0 rejected") {
    REQUIRE_THROWS_AS(heat_kernel(b, 0.0, {1, 1}, {2, 2}), std::invalid_argument);
  }
}

TEST_CASE("kernel_K: free-space limit, symmetry, boundary decay, guard") {
  const EigenBasis& kb = kernel_basis();
  SECTION("deep-interior limit of K_1 |x-y|^3 is 1/(2 pi)") {
    Vec2 c{kPi / 2, kPi / 2};
    // shrink the pair separation toward the free-space regime
    double prev_err = 1e9;
    for (double r : {0.8, 0.5, 0.32}) {
      Vec2 x{c.x - r / 2, c.y}, y{c.x + r / 2, c.y};
      double v = kernel_K(kb, 0.5, x, y) * std::pow(r, 3.0);
      double err = std::abs(v - 1.0 / (2 * kPi));
      REQUIRE(err < prev_err * 1.2);
      prev_err = err;
    }
    REQUIRE(prev_err < 0.05 * (1.0 / (2 * kPi)));
  }
  SECTION("free-space constant helper matches the s=1/2 closed form") {
    REQUIRE(free_space_kernel_constant(0.5) == Catch::Approx(1.0 / (2 * kPi)).epsilon(1e-14));
  }
  SECTION("symmetry") {
    Vec2 x{1.0, 1.4}, y{2.2, 2.0};
    double a = kernel_K(kb, 0.5, x, y), b2 = kernel_K(kb, 0.5, y, x);
    REQUIRE(a == Catch::Approx(b2).epsilon(1e-10));
  }
  SECTION("monotone decay toward the boundary") {
    // y fixed interior, x walks toward the wall; K / free-space value drops
    Vec2 y{kPi / 2, kPi / 2};
    double prev_ratio = 1e9;
    for (double d : {1.2, 0.8, 0.45}) {
      Vec2 x{d, kPi / 2};
      double r = (x - y).norm();
      double ratio = kernel_K(kb, 0.5, x, y) /
                     (free_space_kernel_constant(0.5) * std::pow(r, -3.0));
      REQUIRE(ratio < prev_ratio);
      prev_ratio = ratio;
    }
  }
  SECTION("nonnegativity at mixed samples") {
    for (double s : {0.125, 0.5}) {
      for (Vec2 x : {Vec2{0.4, 0.8}, Vec2{2.0, 2.8}, Vec2{1.5, 0.35}})
        REQUIRE(kernel_K(kb, s, x, {kPi / 2, kPi / 2}) >= -1e-12);
    }
  }
  SECTION("x == y rejected") {
    REQUIRE_THROWS_AS(kernel_K(kb, 0.5, {1, 1}, {1, 1}), std::invalid_argument);
  }
  SECTION("insufficient truncation names the needed factor") {
    EigenBasis small = build_basis(DomainSpec::rectangle(kPi, kPi), {16, 16});
    try {
      kernel_K(small, 0.5, {1.0, 1.0}, {1.02, 1.0});
      FAIL("expected truncation error");
    } catch (const std::runtime_error& e) {
      REQUIRE(std::string(e.what()).find("truncation") != std::string::npos);
      REQUIRE(std::string(e.what()).find("factor") != std::string::npos);
    }
  }
}

TEST_CASE("kernel_B: nonnegative, boundary growth, interior rejection") {
  const EigenBasis& kb = kernel_basis();
  double b_mid = kernel_B(kb, 0.5, {kPi / 2, kPi / 2});
  double b_near = kernel_B(kb, 0.5, {0.35, kPi / 2});
  REQUIRE(b_mid >= -1e-12);
  REQUIRE(b_near > b_mid);  // boundary weight grows toward the wall
  REQUIRE_THROWS_AS(kernel_B(kb, 0.5, {0.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("verify_upper_bound over a sampled table") {
  const EigenBasis& kb = kernel_basis();
  KernelTable tab = build_kernel_table(kb, 0.5, 4, 0.35, 60);
  Report rep = verify_upper_bound(tab);
  INFO(rep.to_text());
  REQUIRE(rep.pass);
  REQUIRE(rep.metrics.at("sup_K_scaled") <= 2.0 / (2 * kPi));
  SECTION("empty table is a vacuous pass with a warning") {
    KernelTable empty;
    empty.s = 0.5;
    Report r2 = verify_upper_bound(empty);
    REQUIRE(r2.pass);
    REQUIRE_FALSE(r2.notes.empty());
  }
}

TEST_CASE("C_dmn estimate: swap symmetry and rescale invariance") {
  const EigenBasis& kb = kernel_basis();
  SECTION("pair swap gives the identical ratio") {
    Vec2 x{1.1, 1.9}, y{2.1, 1.2};
    double r = (x - y).norm();
    double a = kernel_by_order(kb, 0.25, x, y) /
               (std::pow(r, 0.25 - 1.0) * kernel_by_order(kb, 1.0, x, y));
    double b2 = kernel_by_order(kb, 0.25, y, x) /
                (std::pow(r, 0.25 - 1.0) * kernel_by_order(kb, 1.0, y, x));
    REQUIRE(a == Catch::Approx(b2).epsilon(1e-9));
  }
  SECTION("C_dmn(Omega)/C_dmn(2 Omega) = 1 within 5%") {
    DomainConstant dc = estimate_C_dmn(kb, 0.25, 1.0, 40, 0.5);
    INFO("C_dmn=" << dc.C_dmn << " ratio=" << dc.rescale_ratio);
    REQUIRE(dc.sample_count > 20);
    REQUIRE(dc.C_dmn > 0.0);
    REQUIRE(std::abs(dc.rescale_ratio - 1.0) < 0.05);
  }
}

TEST_CASE("bilinear representation identity") {
  const EigenBasis& b = kernel_basis();
  SECTION("f = g = e_0 at s = 1/2: spectral side is sqrt(lambda_0)") {
    SpectralField e0 = unit_mode(b, 0);
    BilinearCheck chk = verify_bilinear_identity(e0, e0, 0.5, 10, 2);
    INFO("lhs=" << chk.lhs << " rhs=" << chk.rhs << " rel=" << chk.rel_err);
    REQUIRE(chk.lhs == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(chk.pass);
  }
  SECTION("zero field gives zero on both sides") {
    SpectralField z = zero_field(b);
    BilinearCheck chk = verify_bilinear_identity(z, z, 0.5, 6, 1);
    REQUIRE(chk.lhs == 0.0);
    REQUIRE(std::abs(chk.rhs) < 1e-14);
  }
  SECTION("subordination consistency: e_k against itself gives lambda_k^s") {
    SpectralField e1 = unit_mode(b, 1);
    BilinearCheck chk = verify_bilinear_identity(e1, e1, 0.5, 12, 1);
    REQUIRE(chk.lhs == Catch::Approx(std::pow(b.lam[1], 0.5)).epsilon(1e-12));
    REQUIRE(std::abs(chk.rhs - chk.lhs) <= 0.02 * chk.lhs);
  }
  SECTION("disjointly supported nonnegative bumps have nonpositive pairing") {
    // smooth bumps projected on the basis, supports in opposite corners
    RectGrid g = b.grid();
    auto bump = [&](Vec2 c0, double rad) {
      GridField gf{&b, std::vector<double>(b.num_nodes(), 0.0)};
      for (int i = 0; i < b.num_nodes(); ++i) {
        Vec2 p = b.node(i);
        double d2 = sq((p - c0).norm() / rad);
        if (d2 < 1.0) gf.v[i] = std::exp(-1.0 / (1.0 - d2));
      }
      return b.analyze(gf);
    };
    SpectralField f = bump({0.8, 0.8}, 0.6);
    SpectralField h = bump({2.4, 2.4}, 0.6);
    double pairing = 0.0;
    for (int k = 0; k < b.num_modes(); ++k)
      pairing += std::pow(b.lam[k], 0.5) * f.c[k] * h.c[k];
    REQUIRE(pairing <= 1e-12);
    (void)g;
  }
}

TEST_CASE("disk kernels: symmetry and nonnegativity at coarse truncation") {
  EigenBasis d = build_basis(DomainSpec::disk(1.0), {12, 36});
  Vec2 x{-0.55, 0.1}, y{0.52, 0.15};
  double k1 = kernel_K(d, 0.5, x, y);
  double k2 = kernel_K(d, 0.5, y, x);
  REQUIRE(k1 >= -1e-12);
  REQUIRE(k1 == Catch::Approx(k2).epsilon(1e-9));
  REQUIRE(kernel_B(d, 0.5, {0.3, -0.2}) >= -1e-12);
}
