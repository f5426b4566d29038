// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: simulate / verify / holder. Placeholder main while the
// library comes up; subcommands land with the cli module.
#include <cstdio>

int main() {
  std::printf("sqglab: no subcommands wired yet\n");
  return 2;
}
