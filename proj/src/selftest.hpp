// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

// Identity and consistency suites run by the `selftest` subcommand.

namespace softring {

struct SelftestResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Special-function identities only.
std::vector<SelftestResult> run_specfun_selftests();
// Special functions plus the profile, basis and solver consistency checks.
std::vector<SelftestResult> run_selftests();

}  // namespace softring
