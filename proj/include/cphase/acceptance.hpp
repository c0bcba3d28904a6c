// Copyright 2026 The cphase-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The acceptance suite: one self-contained check per numbered criterion.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cphase {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured values behind the verdict
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 8;

/// Throws ModelError for ids outside 1..kCriterionCount.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

/// "PASS [3] PPBS interference: ... (0.001 s)", one line per result.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace cphase
