// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "sqg/common.hpp"

namespace sqg {

// Cached in-place DST-I (FFTW RODFT00) plans. Plans are created once under a
// lock and then executed via the new-array interface, which is thread-safe.
// FFTW_UNALIGNED so any double buffer qualifies.
class DstPlans {
 public:
  static DstPlans& instance() {
    static DstPlans p;
    return p;
  }

  // One batch of `howmany` length-n DST-I transforms, layout (stride, dist).
  fftw_plan get(int n, int howmany, int stride, int dist) {
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_tuple(n, howmany, stride, dist);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t need = static_cast<std::size_t>(howmany) * dist + static_cast<std::size_t>(n) * stride + 1;
    std::vector<double> buf(need, 0.0);
    fftw_r2r_kind kind = FFTW_RODFT00;
    fftw_plan p = fftw_plan_many_r2r(1, &n, howmany, buf.data(), nullptr, stride, dist,
                                     buf.data(), nullptr, stride, dist, &kind,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    check_runtime(p != nullptr, "fftw_plan_many_r2r failed");
    plans_[key] = p;
    return p;
  }

 private:
  DstPlans() = default;
  ~DstPlans() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }
  std::mutex mu_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

// In-place DST-I along both axes of a row-major nx x ny array.
// RODFT00: Y_k = 2 sum_j X_j sin(pi (j+1)(k+1) / (n+1)), unnormalized.
inline void dst2_inplace(std::vector<double>& a, int nx, int ny) {
  fftw_plan py = DstPlans::instance().get(ny, nx, 1, ny);
  fftw_execute_r2r(py, a.data(), a.data());
  fftw_plan px = DstPlans::instance().get(nx, ny, ny, 1);
  fftw_execute_r2r(px, a.data(), a.data());
}

}  // namespace sqg
