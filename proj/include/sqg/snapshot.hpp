// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// SQGF binary field snapshots and CSV coefficient export.
//
// Layout (little-endian), 32-byte header:
//   bytes 0..3   magic "SQGF"
//   bytes 4..5   version u16 (currently 1)
//   bytes 6..7   shape enum u16 (0 rectangle, 1 disk)
//   bytes 8..11  M_x u32   (rectangle: x modes; disk: max angular order)
//   bytes 12..15 M_y u32   (rectangle: y modes; disk: radial modes)
//   bytes 16..23 reserved, zero
//   bytes 24..31 payload length u64 (bytes of coefficient data)
// followed by f64 coefficients in sorted mode order.
#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "sqg/basis.hpp"

namespace sqg {

static_assert(std::endian::native == std::endian::little,
              "SQGF writer assumes a little-endian host");

inline void write_snapshot(const std::string& path, const SpectralField& f) {
  const EigenBasis& b = *f.basis;
  std::ofstream out(path, std::ios::binary);
  check_runtime(out.good(), "write_snapshot: cannot open " + path);
  char header[32] = {};
  std::memcpy(header, "SQGF", 4);
  uint16_t version = 1;
  uint16_t shape = b.dom.shape == Shape::rectangle ? 0 : 1;
  uint32_t mx = static_cast<uint32_t>(b.trunc.a);
  uint32_t my = static_cast<uint32_t>(b.trunc.b);
  uint64_t payload = static_cast<uint64_t>(f.c.size()) * sizeof(double);
  std::memcpy(header + 4, &version, 2);
  std::memcpy(header + 6, &shape, 2);
  std::memcpy(header + 8, &mx, 4);
  std::memcpy(header + 12, &my, 4);
  std::memcpy(header + 24, &payload, 8);
  out.write(header, 32);
  out.write(reinterpret_cast<const char*>(f.c.data()),
            static_cast<std::streamsize>(payload));
  check_runtime(out.good(), "write_snapshot: short write to " + path);
}

inline SpectralField read_snapshot(const std::string& path, const EigenBasis& b) {
  std::ifstream in(path, std::ios::binary);
  check_runtime(in.good(), "read_snapshot: cannot open " + path);
  char header[32];
  in.read(header, 32);
  check_runtime(in.gcount() == 32, "read_snapshot: truncated header in " + path);
  check_runtime(std::memcmp(header, "SQGF", 4) == 0, "read_snapshot: bad magic in " + path);
  uint16_t version, shape;
  uint32_t mx, my;
  uint64_t payload;
  std::memcpy(&version, header + 4, 2);
  std::memcpy(&shape, header + 6, 2);
  std::memcpy(&mx, header + 8, 4);
  std::memcpy(&my, header + 12, 4);
  std::memcpy(&payload, header + 24, 8);
  check_runtime(version == 1, "read_snapshot: unsupported version");
  check_runtime(shape == (b.dom.shape == Shape::rectangle ? 0u : 1u),
                "read_snapshot: shape mismatch with basis");
  check_runtime(mx == static_cast<uint32_t>(b.trunc.a) &&
                    my == static_cast<uint32_t>(b.trunc.b),
                "read_snapshot: truncation mismatch with basis");
  check_runtime(payload == static_cast<uint64_t>(b.num_modes()) * sizeof(double),
                "read_snapshot: payload size mismatch");
  SpectralField f{&b, std::vector<double>(b.num_modes())};
  in.read(reinterpret_cast<char*>(f.c.data()), static_cast<std::streamsize>(payload));
  check_runtime(in.gcount() == static_cast<std::streamsize>(payload),
                "read_snapshot: truncated payload in " + path);
  return f;
}

inline void write_coeff_csv(const std::string& path, const SpectralField& f) {
  const EigenBasis& b = *f.basis;
  std::ofstream out(path);
  check_runtime(out.good(), "write_coeff_csv: cannot open " + path);
  out << "mode_index,m,n_or_k,lambda,coeff\n";
  out.precision(17);
  for (int k = 0; k < b.num_modes(); ++k)
    out << k << ',' << b.modes[k].a << ',' << b.modes[k].b << ',' << b.lam[k] << ','
        << f.c[k] << '\n';
}

}  // namespace sqg
