// Copyright 2026 The LDPT Authors
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

#ifndef LDPT_VERIFY_H_
#define LDPT_VERIFY_H_

#include <functional>
#include <string>
#include <vector>

namespace ldpt {

enum class VerifyLevel { kQuick, kFull };

// Multiplicative mutations applied inside the suite. A faithful library
// passes every check at the defaults; mutating any of them by 1% must make
// at least one check fail.
struct Perturbation {
  double alpha_scale = 1.0;      // RAPPOR alpha used by the statistic
  double threshold_scale = 1.0;  // every tester threshold
  double flip_scale = 1.0;       // flip probability of every channel
};

struct CheckResult {
  std::string name;
  std::string group;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct VerifyCheck {
  std::string name;
  // One of: ldp, rappor, hadamard, subsets, moments, independence,
  // reduction, thresholds.
  std::string group;
  bool full_only = false;
  std::function<CheckResult(const Perturbation&)> run;
};

std::vector<VerifyCheck> VerifyChecks();

struct VerifyReport {
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  bool passed() const;
};

// Runs every check for the level; `progress` is called after each one.
VerifyReport VerifySuite(
    VerifyLevel level, const Perturbation& perturbation = {},
    const std::function<void(const CheckResult&)>& progress = nullptr);

// Runs only the checks of one group.
VerifyReport VerifyGroup(const std::string& group, VerifyLevel level,
                         const Perturbation& perturbation = {});

std::string FormatCheck(const CheckResult& r);

}  // namespace ldpt

#endif  // LDPT_VERIFY_H_
