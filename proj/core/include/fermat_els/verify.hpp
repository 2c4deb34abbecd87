// Copyright 2026 The fermat-els Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fermat_els {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

enum class VerifySuite { quick, full };

VerifySuite parse_verify_suite(std::string_view text);

/// Cross-checks the library against the slow oracles. `quick` keeps every
/// check small; `full` adds the wild-prime counts, the method agreement
/// table and the Euler product.
std::vector<CheckResult> run_verification(VerifySuite suite, int threads = 1);

}  // namespace fermat_els
