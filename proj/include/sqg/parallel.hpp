// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace sqg {

// Process-wide worker cap (CLI --threads). 0 means hardware concurrency.
inline std::atomic<int>& max_threads() {
  static std::atomic<int> n{0};
  return n;
}

inline int effective_threads() {
  int n = max_threads().load();
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

// Static block partition; each index writes only its own outputs, so the
// result is identical for any worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int nw = std::min<std::size_t>(effective_threads(), n > 0 ? n : 1);
  if (nw <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sqg
