// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// Dirichlet eigensystems on rectangles and disks: forward/inverse transforms,
// fractional spectral multipliers, gradients, and the constrained Riesz
// transform grad^perp Lambda^{-1}.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "sqg/bessel.hpp"
#include "sqg/common.hpp"
#include "sqg/domain.hpp"
#include "sqg/dst.hpp"
#include "sqg/gauss.hpp"

namespace sqg {

// rectangle: a=m, b=n (1-based x/y frequencies), par unused.
// disk: a=m (angular order), b=k (1-based radial index), par 0=cos 1=sin.
struct ModeId {
  int a = 0;
  int b = 0;
  int par = 0;
};

struct Truncation {
  int a = 0;  // rectangle: modes in x; disk: max angular order
  int b = 0;  // rectangle: modes in y; disk: radial modes per order
};

// Uniform interior grid of a rectangle (collocation and oversampled views).
struct RectGrid {
  int nx = 0, ny = 0;
  double lx = 0.0, ly = 0.0;
  double hx() const { return lx / (nx + 1); }
  double hy() const { return ly / (ny + 1); }
  double x(int i) const { return (i + 1) * hx(); }
  double y(int j) const { return (j + 1) * hy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
};

class EigenBasis;

struct SpectralField {
  const EigenBasis* basis = nullptr;
  std::vector<double> c;  // sorted mode order
};

struct GridField {
  const EigenBasis* basis = nullptr;
  std::vector<double> v;  // collocation nodes, row-major
};

struct VectorField {
  const EigenBasis* basis = nullptr;
  std::vector<double> u;  // x-component on collocation nodes
  std::vector<double> w;  // y-component
};

namespace detail {
enum class Trig { sin, cos };

inline double trig_eval(Trig t, double arg) {
  return t == Trig::sin ? std::sin(arg) : std::cos(arg);
}
}  // namespace detail

class EigenBasis {
 public:
  DomainSpec dom;
  Truncation trunc;
  std::vector<ModeId> modes;      // sorted by eigenvalue, ties lexicographic
  std::vector<double> lam;        // eigenvalues, same order

  // rectangle
  int nx = 0, ny = 0;             // collocation nodes per direction (= modes)
  std::vector<int> sorted_of_mn;  // (m-1)*trunc.b + (n-1) -> sorted index

  // disk
  int nr = 0, nphi = 0;
  std::vector<double> rad_x, rad_w;  // Gauss-Legendre nodes/weights on [0,R]
  std::vector<double> zeros;         // j_{m,k}, index m*trunc.b + (k-1)
  std::vector<double> mode_norm;     // per sorted mode

  // Mode/gradient values on the collocation grid, [mode][node]. Built lazily:
  // kernel-oriented bases never touch them and they dominate memory.
  struct DiskTables {
    std::vector<double> eval, dx, dy;
  };

  static EigenBasis build(const DomainSpec& d, Truncation t) {
    require(t.a >= 1 && t.b >= 1, "build_basis: truncation must be >= 1 per direction");
    EigenBasis b;
    b.dom = d;
    b.trunc = t;
    if (d.shape == Shape::rectangle)
      b.init_rectangle();
    else
      b.init_disk();
    return b;
  }

  int num_modes() const { return static_cast<int>(modes.size()); }
  double lambda_min() const { return lam.front(); }
  double lambda_max() const { return lam.back(); }

  // ---- collocation grid -------------------------------------------------

  int num_nodes() const {
    return dom.shape == Shape::rectangle ? nx * ny : nr * nphi;
  }

  RectGrid grid() const {
    require(dom.shape == Shape::rectangle, "grid(): rectangle only");
    return {nx, ny, dom.lx(), dom.ly()};
  }

  RectGrid oversampled_grid(int factor) const {
    RectGrid g = grid();
    g.nx = factor * (nx + 1) - 1;
    g.ny = factor * (ny + 1) - 1;
    return g;
  }

  Vec2 node(int i) const {
    if (dom.shape == Shape::rectangle) {
      RectGrid g{nx, ny, dom.lx(), dom.ly()};
      return {g.x(i / ny), g.y(i % ny)};
    }
    double r = rad_x[i / nphi];
    double phi = phi_node(i % nphi);
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  double weight(int i) const {
    if (dom.shape == Shape::rectangle) {
      RectGrid g{nx, ny, dom.lx(), dom.ly()};
      return g.hx() * g.hy();
    }
    double r = rad_x[i / nphi];
    return rad_w[i / nphi] * r * (2.0 * kPi / nphi);
  }

  double phi_node(int j) const { return 2.0 * kPi * j / nphi; }

  // ---- pointwise evaluation ----------------------------------------------

  double eval_mode(int k, Vec2 p) const {
    const ModeId& md = modes[k];
    if (dom.shape == Shape::rectangle) {
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      return norm * std::sin(md.a * kPi * p.x / dom.lx()) *
             std::sin(md.b * kPi * p.y / dom.ly());
    }
    double r = p.norm();
    double phi = std::atan2(p.y, p.x);
    double z = zeros[md.a * trunc.b + (md.b - 1)];
    double ang = md.par == 0 ? std::cos(md.a * phi) : std::sin(md.a * phi);
    return mode_norm[k] * bessel_j(md.a, z * r / dom.radius()) * ang;
  }

  double eval_field(const SpectralField& f, Vec2 p) const {
    check_field(f);
    if (dom.shape == Shape::rectangle) {
      // tensor evaluation, O(mx*my) with O(mx+my) trig calls
      const int ma = trunc.a, mb = trunc.b;
      std::vector<double> sx(ma), sy(mb);
      for (int m = 1; m <= ma; ++m) sx[m - 1] = std::sin(m * kPi * p.x / dom.lx());
      for (int n = 1; n <= mb; ++n) sy[n - 1] = std::sin(n * kPi * p.y / dom.ly());
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      double acc = 0.0;
      for (int m = 1; m <= ma; ++m) {
        double row = 0.0;
        for (int n = 1; n <= mb; ++n) {
          int k = sorted_of_mn[(m - 1) * mb + (n - 1)];
          row += f.c[k] * sy[n - 1];
        }
        acc += row * sx[m - 1];
      }
      return norm * acc;
    }
    double acc = 0.0;
    for (int k = 0; k < num_modes(); ++k)
      if (f.c[k] != 0.0) acc += f.c[k] * eval_mode(k, p);
    return acc;
  }

  double mode_integral(int k) const {
    const ModeId& md = modes[k];
    if (dom.shape == Shape::rectangle) {
      auto line = [](int m, double l) {
        return (m % 2 == 1) ? 2.0 * l / (m * kPi) : 0.0;
      };
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      return norm * line(md.a, dom.lx()) * line(md.b, dom.ly());
    }
    if (md.a != 0) return 0.0;  // angular integral kills m >= 1
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
      double z = zeros[md.b - 1];
      acc += rad_w[i] * rad_x[i] * bessel_j(0, z * rad_x[i] / dom.radius());
    }
    return mode_norm[k] * acc * 2.0 * kPi;
  }

  // ---- transforms ----------------------------------------------------------

  SpectralField analyze(const GridField& g) const {
    check_field(g);
    SpectralField f{this, std::vector<double>(modes.size(), 0.0)};
    if (dom.shape == Shape::rectangle) {
      std::vector<double> a = g.v;
      dst2_inplace(a, nx, ny);
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      double scale = 1.0 / (norm * (nx + 1.0) * (ny + 1.0));
      for (int m = 1; m <= trunc.a; ++m)
        for (int n = 1; n <= trunc.b; ++n)
          f.c[sorted_of_mn[(m - 1) * trunc.b + (n - 1)]] = a[(m - 1) * ny + (n - 1)] * scale;
      return f;
    }
    const DiskTables& tab = disk_tables();
    for (int k = 0; k < num_modes(); ++k) {
      const double* e = &tab.eval[static_cast<std::size_t>(k) * num_nodes()];
      double acc = 0.0;
      for (int i = 0; i < num_nodes(); ++i) acc += e[i] * g.v[i] * weight(i);
      f.c[k] = acc;
    }
    return f;
  }

  GridField synthesize(const SpectralField& f) const {
    check_field(f);
    GridField g{this, std::vector<double>(num_nodes(), 0.0)};
    if (dom.shape == Shape::rectangle) {
      for (int m = 1; m <= trunc.a; ++m)
        for (int n = 1; n <= trunc.b; ++n)
          g.v[(m - 1) * ny + (n - 1)] = f.c[sorted_of_mn[(m - 1) * trunc.b + (n - 1)]];
      dst2_inplace(g.v, nx, ny);
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      for (double& x : g.v) x *= 0.25 * norm;
      return g;
    }
    const DiskTables& tab = disk_tables();
    for (int k = 0; k < num_modes(); ++k) {
      if (f.c[k] == 0.0) continue;
      const double* e = &tab.eval[static_cast<std::size_t>(k) * num_nodes()];
      for (int i = 0; i < num_nodes(); ++i) g.v[i] += f.c[k] * e[i];
    }
    return g;
  }

  // Coefficients of a sample array living on a finer interior grid of the same
  // rectangle. Exact for band-limited data once g.nx >= trunc.a etc.
  SpectralField analyze_on(const RectGrid& g, const std::vector<double>& vals) const {
    require(dom.shape == Shape::rectangle, "analyze_on: rectangle only");
    require(g.nx >= trunc.a && g.ny >= trunc.b, "analyze_on: grid under-resolves basis");
    std::vector<double> a = vals;
    dst2_inplace(a, g.nx, g.ny);
    double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
    double scale = 1.0 / (norm * (g.nx + 1.0) * (g.ny + 1.0));
    SpectralField f{this, std::vector<double>(modes.size(), 0.0)};
    for (int m = 1; m <= trunc.a; ++m)
      for (int n = 1; n <= trunc.b; ++n)
        f.c[sorted_of_mn[(m - 1) * trunc.b + (n - 1)]] = a[(m - 1) * g.ny + (n - 1)] * scale;
    return f;
  }

  std::vector<double> synthesize_on(const RectGrid& g, const SpectralField& f) const {
    require(dom.shape == Shape::rectangle, "synthesize_on: rectangle only");
    check_field(f);
    if (g.nx >= trunc.a && g.ny >= trunc.b) {
      std::vector<double> a(g.size(), 0.0);
      for (int m = 1; m <= trunc.a; ++m)
        for (int n = 1; n <= trunc.b; ++n)
          a[(m - 1) * g.ny + (n - 1)] = f.c[sorted_of_mn[(m - 1) * trunc.b + (n - 1)]];
      dst2_inplace(a, g.nx, g.ny);
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      for (double& x : a) x *= 0.25 * norm;
      return a;
    }
    return synth_tensor(g, f, detail::Trig::sin, detail::Trig::sin,
                        [](int, int) { return 1.0; });
  }

  // Derivative synthesis on an arbitrary rectangle grid by term-by-term
  // analytic differentiation.
  enum class Deriv { none, dx, dy, dxx, dyy, dxy };

  std::vector<double> synthesize_deriv(const RectGrid& g, const SpectralField& f,
                                       Deriv d) const {
    require(dom.shape == Shape::rectangle, "synthesize_deriv: rectangle only");
    check_field(f);
    const double cx = kPi / dom.lx(), cy = kPi / dom.ly();
    using detail::Trig;
    switch (d) {
      case Deriv::none:
        return synthesize_on(g, f);
      case Deriv::dx:
        return synth_tensor(g, f, Trig::cos, Trig::sin,
                            [cx](int m, int) { return m * cx; });
      case Deriv::dy:
        return synth_tensor(g, f, Trig::sin, Trig::cos,
                            [cy](int, int n) { return n * cy; });
      case Deriv::dxx:
        return synth_tensor(g, f, Trig::sin, Trig::sin,
                            [cx](int m, int) { return -sq(m * cx); });
      case Deriv::dyy:
        return synth_tensor(g, f, Trig::sin, Trig::sin,
                            [cy](int, int n) { return -sq(n * cy); });
      case Deriv::dxy:
        return synth_tensor(g, f, Trig::cos, Trig::cos,
                            [cx, cy](int m, int n) { return m * cx * n * cy; });
    }
    return {};
  }

  // ---- spectral calculus ----------------------------------------------------

  SpectralField apply_fractional(const SpectralField& f, double s) const {
    check_field(f);
    if (s == 0.0) return f;
    SpectralField g{this, f.c};
    for (int k = 0; k < num_modes(); ++k) g.c[k] *= std::pow(lam[k], 0.5 * s);
    return g;
  }

  double sobolev_norm(const SpectralField& f, double s) const {
    check_field(f);
    double acc = 0.0;
    if (s == 0.0) {
      for (double c : f.c) acc += c * c;
    } else {
      for (int k = 0; k < num_modes(); ++k) acc += std::pow(lam[k], s) * sq(f.c[k]);
    }
    return std::sqrt(acc);
  }

  VectorField gradient(const SpectralField& f) const {
    check_field(f);
    if (dom.shape == Shape::rectangle) {
      RectGrid g = grid();
      return {this, synthesize_deriv(g, f, Deriv::dx), synthesize_deriv(g, f, Deriv::dy)};
    }
    VectorField out{this, std::vector<double>(num_nodes(), 0.0),
                    std::vector<double>(num_nodes(), 0.0)};
    const DiskTables& tab = disk_tables();
    for (int k = 0; k < num_modes(); ++k) {
      if (f.c[k] == 0.0) continue;
      const double* ex = &tab.dx[static_cast<std::size_t>(k) * num_nodes()];
      const double* ey = &tab.dy[static_cast<std::size_t>(k) * num_nodes()];
      for (int i = 0; i < num_nodes(); ++i) {
        out.u[i] += f.c[k] * ex[i];
        out.w[i] += f.c[k] * ey[i];
      }
    }
    return out;
  }

  // u = grad^perp Lambda^{-1} theta = (-d_y psi, d_x psi), psi the stream fn.
  VectorField riesz_velocity(const SpectralField& theta) const {
    check_field(theta);
    SpectralField psi = apply_fractional(theta, -1.0);
    VectorField g = gradient(psi);
    for (std::size_t i = 0; i < g.u.size(); ++i) {
      double gx = g.u[i], gy = g.w[i];
      g.u[i] = -gy;
      g.w[i] = gx;
    }
    return g;
  }

  // Velocity components on an arbitrary rectangle grid.
  std::pair<std::vector<double>, std::vector<double>> riesz_velocity_on(
      const RectGrid& g, const SpectralField& theta) const {
    SpectralField psi = apply_fractional(theta, -1.0);
    std::vector<double> gy = synthesize_deriv(g, psi, Deriv::dy);
    std::vector<double> gx = synthesize_deriv(g, psi, Deriv::dx);
    for (double& v : gy) v = -v;
    return {std::move(gy), std::move(gx)};
  }

  // Velocity at an arbitrary point (disk path uses Bessel recurrences).
  Vec2 riesz_velocity_at(const SpectralField& theta, Vec2 p) const {
    SpectralField psi = apply_fractional(theta, -1.0);
    Vec2 gr = gradient_at(psi, p);
    return {-gr.y, gr.x};
  }

  Vec2 gradient_at(const SpectralField& f, Vec2 p) const {
    check_field(f);
    if (dom.shape == Shape::rectangle) {
      const int ma = trunc.a, mb = trunc.b;
      std::vector<double> sx(ma), cxv(ma), sy(mb), cyv(mb);
      for (int m = 1; m <= ma; ++m) {
        double a = m * kPi * p.x / dom.lx();
        sx[m - 1] = std::sin(a);
        cxv[m - 1] = std::cos(a);
      }
      for (int n = 1; n <= mb; ++n) {
        double a = n * kPi * p.y / dom.ly();
        sy[n - 1] = std::sin(a);
        cyv[n - 1] = std::cos(a);
      }
      double norm = 2.0 / std::sqrt(dom.lx() * dom.ly());
      double ax = 0.0, ay = 0.0;
      for (int m = 1; m <= ma; ++m) {
        double rx = 0.0, ry = 0.0;
        for (int n = 1; n <= mb; ++n) {
          double c = f.c[sorted_of_mn[(m - 1) * mb + (n - 1)]];
          rx += c * sy[n - 1];
          ry += c * cyv[n - 1] * (n * kPi / dom.ly());
        }
        ax += rx * cxv[m - 1] * (m * kPi / dom.lx());
        ay += ry * sx[m - 1];
      }
      return {norm * ax, norm * ay};
    }
    double r = p.norm(), phi = std::atan2(p.y, p.x);
    double R = dom.radius();
    double dr = 0.0, dphi = 0.0;
    for (int k = 0; k < num_modes(); ++k) {
      if (f.c[k] == 0.0) continue;
      const ModeId& md = modes[k];
      double z = zeros[md.a * trunc.b + (md.b - 1)];
      double J = bessel_j(md.a, z * r / R);
      double Jp = bessel_j_prime(md.a, z * r / R);
      double ang = md.par == 0 ? std::cos(md.a * phi) : std::sin(md.a * phi);
      double dang = md.par == 0 ? -md.a * std::sin(md.a * phi) : md.a * std::cos(md.a * phi);
      dr += f.c[k] * mode_norm[k] * (z / R) * Jp * ang;
      dphi += f.c[k] * mode_norm[k] * J * dang;
    }
    double inv_r = r > 1e-12 * R ? 1.0 / r : 0.0;
    double c = std::cos(phi), s = std::sin(phi);
    return {c * dr - s * dphi * inv_r, s * dr + c * dphi * inv_r};
  }

  // ---- norms on grids -------------------------------------------------------

  double grid_l2(const GridField& g) const {
    check_field(g);
    double acc = 0.0;
    for (int i = 0; i < num_nodes(); ++i) acc += weight(i) * sq(g.v[i]);
    return std::sqrt(acc);
  }

  double sup_abs(const std::vector<double>& vals) const {
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
  }

  // L-infinity on an oversampled grid (rectangle) or collocation (disk).
  double linf(const SpectralField& f, int oversample = 2) const {
    if (dom.shape == Shape::rectangle)
      return sup_abs(synthesize_on(oversampled_grid(oversample), f));
    return sup_abs(synthesize(f).v);
  }

  void check_field(const SpectralField& f) const {
    require(f.basis == this, "field bound to a different basis");
    require(static_cast<int>(f.c.size()) == num_modes(), "coefficient count mismatch");
  }
  void check_field(const GridField& g) const {
    require(g.basis == this, "field bound to a different basis");
    require(static_cast<int>(g.v.size()) == num_nodes(), "grid value count mismatch");
  }

 private:
  void init_rectangle() {
    const int ma = trunc.a, mb = trunc.b;
    nx = ma;
    ny = mb;
    std::vector<int> order(static_cast<std::size_t>(ma) * mb);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> l(order.size());
    const double lx = dom.lx(), ly = dom.ly();
    for (int m = 1; m <= ma; ++m)
      for (int n = 1; n <= mb; ++n)
        l[(m - 1) * mb + (n - 1)] = sq(kPi) * (sq(m) / sq(lx) + sq(n) / sq(ly));
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      if (l[i] != l[j]) return l[i] < l[j];
      return std::pair(i / mb, i % mb) < std::pair(j / mb, j % mb);
    });
    sorted_of_mn.assign(order.size(), 0);
    modes.resize(order.size());
    lam.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      int idx = order[k];
      int m = idx / mb + 1, n = idx % mb + 1;
      modes[k] = {m, n, 0};
      lam[k] = l[idx];
      sorted_of_mn[idx] = static_cast<int>(k);
    }
  }

  void init_disk() {
    const int mang = trunc.a, mrad = trunc.b;
    const double R = dom.radius();
    nphi = std::max(8, 4 * mang + 4);
    zeros.resize(static_cast<std::size_t>(mang + 1) * mrad);
    double zmax = 0.0;
    for (int m = 0; m <= mang; ++m)
      for (int k = 1; k <= mrad; ++k) {
        zeros[m * mrad + (k - 1)] = bessel_zero(m, k);
        zmax = std::max(zmax, zeros[m * mrad + (k - 1)]);
      }
    // Product integrands carry total radial phase ~ 2*zmax; one Gauss node
    // per radian of half-phase plus margin keeps pairwise quadrature < 1e-10.
    nr = static_cast<int>(std::ceil(zmax)) + 10;
    QuadRule q = gauss_legendre(nr, 0.0, R);
    rad_x = q.x;
    rad_w = q.w;

    struct Tmp {
      ModeId id;
      double lam;
      double nrm;
    };
    std::vector<Tmp> tmp;
    for (int m = 0; m <= mang; ++m) {
      for (int k = 1; k <= mrad; ++k) {
        double z = zeros[m * mrad + (k - 1)];
        double l = sq(z / R);
        double jn = std::abs(bessel_j(m + 1, z));
        double nrm = (m == 0) ? 1.0 / (std::sqrt(kPi) * R * jn)
                              : std::sqrt(2.0 / kPi) / (R * jn);
        tmp.push_back({{m, k, 0}, l, nrm});
        if (m >= 1) tmp.push_back({{m, k, 1}, l, nrm});
      }
    }
    std::stable_sort(tmp.begin(), tmp.end(), [](const Tmp& x, const Tmp& y) {
      if (x.lam != y.lam) return x.lam < y.lam;
      return std::tuple(x.id.a, x.id.b, x.id.par) < std::tuple(y.id.a, y.id.b, y.id.par);
    });
    modes.resize(tmp.size());
    lam.resize(tmp.size());
    mode_norm.resize(tmp.size());
    for (std::size_t k = 0; k < tmp.size(); ++k) {
      modes[k] = tmp[k].id;
      lam[k] = tmp[k].lam;
      mode_norm[k] = tmp[k].nrm;
    }
  }

  const DiskTables& disk_tables() const {
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    if (tables_) return *tables_;
    auto tab = std::make_shared<DiskTables>();
    const int nn = num_nodes();
    tab->eval.assign(static_cast<std::size_t>(num_modes()) * nn, 0.0);
    tab->dx.assign(tab->eval.size(), 0.0);
    tab->dy.assign(tab->eval.size(), 0.0);
    const double R = dom.radius();
    for (int k = 0; k < num_modes(); ++k) {
      const ModeId& md = modes[k];
      double z = zeros[md.a * trunc.b + (md.b - 1)];
      for (int i = 0; i < nr; ++i) {
        double r = rad_x[i];
        double J = bessel_j(md.a, z * r / R);
        double Jp = bessel_j_prime(md.a, z * r / R);
        for (int j = 0; j < nphi; ++j) {
          double phi = phi_node(j);
          double ang = md.par == 0 ? std::cos(md.a * phi) : std::sin(md.a * phi);
          double dang =
              md.par == 0 ? -md.a * std::sin(md.a * phi) : md.a * std::cos(md.a * phi);
          std::size_t at = static_cast<std::size_t>(k) * nn + i * nphi + j;
          tab->eval[at] = mode_norm[k] * J * ang;
          double dr = mode_norm[k] * (z / R) * Jp * ang;
          double dphi = mode_norm[k] * J * dang;
          double c = std::cos(phi), s = std::sin(phi);
          tab->dx[at] = c * dr - s * dphi / r;
          tab->dy[at] = s * dr + c * dphi / r;
        }
      }
    }
    tables_ = std::move(tab);
    return *tables_;
  }

  mutable std::shared_ptr<const DiskTables> tables_;

  template <class Factor>
  std::vector<double> synth_tensor(const RectGrid& g, const SpectralField& f,
                                   detail::Trig tx, detail::Trig ty, Factor fac) const {
    const int ma = trunc.a, mb = trunc.b;
    const double lx = dom.lx(), ly = dom.ly();
    std::vector<double> Tx(static_cast<std::size_t>(ma) * g.nx);
    std::vector<double> Ty(static_cast<std::size_t>(mb) * g.ny);
    for (int m = 1; m <= ma; ++m)
      for (int i = 0; i < g.nx; ++i)
        Tx[(m - 1) * g.nx + i] = detail::trig_eval(tx, m * kPi * g.x(i) / lx);
    for (int n = 1; n <= mb; ++n)
      for (int j = 0; j < g.ny; ++j)
        Ty[(n - 1) * g.ny + j] = detail::trig_eval(ty, n * kPi * g.y(j) / ly);
    double norm = 2.0 / std::sqrt(lx * ly);
    // W[m][j] = sum_n C[m][n] fac Ty[n][j]; out[i][j] = sum_m Tx[m][i] W[m][j]
    std::vector<double> W(static_cast<std::size_t>(ma) * g.ny, 0.0);
    for (int m = 1; m <= ma; ++m) {
      for (int n = 1; n <= mb; ++n) {
        double c = f.c[sorted_of_mn[(m - 1) * mb + (n - 1)]] * fac(m, n) * norm;
        if (c == 0.0) continue;
        const double* ty = &Ty[(n - 1) * g.ny];
        double* w = &W[(m - 1) * g.ny];
        for (int j = 0; j < g.ny; ++j) w[j] += c * ty[j];
      }
    }
    std::vector<double> out(g.size(), 0.0);
    for (int m = 1; m <= ma; ++m) {
      const double* w = &W[(m - 1) * g.ny];
      for (int i = 0; i < g.nx; ++i) {
        double t = Tx[(m - 1) * g.nx + i];
        if (t == 0.0) continue;
        double* o = &out[static_cast<std::size_t>(i) * g.ny];
        for (int j = 0; j < g.ny; ++j) o[j] += t * w[j];
      }
    }
    return out;
  }
};

inline EigenBasis build_basis(const DomainSpec& d, Truncation t) {
  return EigenBasis::build(d, t);
}

inline SpectralField zero_field(const EigenBasis& b) {
  return {&b, std::vector<double>(b.num_modes(), 0.0)};
}

inline SpectralField unit_mode(const EigenBasis& b, int k) {
  SpectralField f = zero_field(b);
  f.c.at(k) = 1.0;
  return f;
}

}  // namespace sqg
