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

// Prints one PASS/FAIL line per acceptance criterion.
//
// Usage: acceptance_test [--only N] [--expect-fail N,...]
// Exit status is 0 when every criterion passes, or when the only failures are
// criteria listed with --expect-fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "ldpt/experiment.h"
#include "ldpt/verify.h"

namespace ldpt {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double Since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Runs the named checks of one group and requires all of them to pass
// within `budget` seconds.
Outcome Checks(const std::string& group, const std::vector<std::string>& names,
               double budget) {
  const VerifyReport r = VerifyGroup(group, VerifyLevel::kQuick);
  Outcome o;
  o.passed = r.seconds < budget;
  for (const std::string& name : names) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(),
                           [&](const CheckResult& c) { return c.name == name; });
    if (it == r.checks.end()) {
      o.passed = false;
      absl::StrAppend(&o.detail, name, " missing; ");
      continue;
    }
    o.passed = o.passed && it->passed;
    absl::StrAppend(&o.detail, name, "=", it->passed ? "ok" : "FAIL", " (",
                    absl::StrFormat("%.3g", it->measured), "); ");
  }
  absl::StrAppend(&o.detail, absl::StrFormat("%.2fs of %.0fs", r.seconds, budget));
  return o;
}

Outcome EndToEnd() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{true, ""};
  for (Protocol p : {Protocol::kRapporId, Protocol::kHrId, Protocol::kPublicId,
                     Protocol::kPrivateIndep, Protocol::kPublicIndep}) {
    ExperimentConfig c = DefaultConfig(p, 16, 0.5, 1.0);
    c.trials = 300;
    const absl::StatusOr<ExperimentResult> r = RunExperiment(c);
    if (!r.ok()) {
      o.passed = false;
      absl::StrAppend(&o.detail, std::string(ProtocolName(p)), ": ", r.status().message(), "; ");
      continue;
    }
    const ResultRow& row = r->rows.front();
    const bool ok = std::max(row.type1, row.type2) <= 1.0 / 3.0;
    o.passed = o.passed && ok;
    absl::StrAppend(&o.detail,
                    absl::StrFormat("%s n=%d e1=%.3f e2=%.3f%s; ",
                                    std::string(ProtocolName(p)), row.n,
                                    row.type1, row.type2, ok ? "" : " FAIL"));
  }
  const double secs = Since(t0);
  o.passed = o.passed && secs < 900.0;
  absl::StrAppend(&o.detail, absl::StrFormat("%.1fs of 900s", secs));
  return o;
}

std::int64_t MinPlayers(Protocol p, int k, int trials, std::string& detail) {
  ExperimentConfig c = DefaultConfig(p, k, 0.5, 1.0);
  c.trials = trials;
  const absl::StatusOr<ResultRow> row = FindMinPlayers(c, {.resolution = 0.05});
  if (!row.ok()) {
    absl::StrAppend(&detail, std::string(ProtocolName(p)), " k=", k, ": ",
                    row.status().message(), "; ");
    return -1;
  }
  absl::StrAppend(&detail, std::string(ProtocolName(p)), "@", k, "=", row->n, " ");
  return row->n;
}

Outcome Separation() {
  Outcome o{true, ""};
  std::vector<double> ratios;
  for (int k : {16, 32, 64}) {
    const std::int64_t pub = MinPlayers(Protocol::kPublicId, k, 2000, o.detail);
    const std::int64_t rap = MinPlayers(Protocol::kRapporId, k, 2000, o.detail);
    if (pub < 0 || rap < 0 || pub >= rap) {
      o.passed = false;
      absl::StrAppend(&o.detail, "[id order FAIL at k=", k, "] ");
    }
    ratios.push_back(pub > 0 ? static_cast<double>(rap) / pub : 0.0);
  }
  const bool monotone = ratios[0] < ratios[1] && ratios[1] < ratios[2];
  o.passed = o.passed && monotone;
  absl::StrAppend(&o.detail,
                  absl::StrFormat("ratios %.2f %.2f %.2f%s; ", ratios[0],
                                  ratios[1], ratios[2],
                                  monotone ? "" : " [not monotone]"));
  for (int k : {8, 16}) {
    const std::int64_t pub =
        MinPlayers(Protocol::kPublicIndep, k, 1000, o.detail);
    const std::int64_t priv =
        MinPlayers(Protocol::kPrivateIndep, k, 1000, o.detail);
    if (pub < 0 || priv < 0 || pub >= priv) {
      o.passed = false;
      absl::StrAppend(&o.detail, "[indep order FAIL at k=", k, "] ");
    }
  }
  return o;
}

Outcome NegativeControls() {
  Outcome o{true, ""};
  const std::vector<std::pair<std::string, Perturbation>> mutations = {
      {"alpha", {.alpha_scale = 1.01}},
      {"threshold", {.threshold_scale = 1.01}},
      {"flip", {.flip_scale = 1.01}},
  };
  for (const auto& [name, pert] : mutations) {
    const VerifyReport r = VerifySuite(VerifyLevel::kQuick, pert);
    int failed = 0;
    std::string first;
    for (const CheckResult& c : r.checks) {
      if (!c.passed) {
        if (failed == 0) first = c.name;
        ++failed;
      }
    }
    o.passed = o.passed && failed > 0;
    absl::StrAppend(&o.detail, name, "+1%: ", failed, " failing (", first,
                    "); ");
  }
  return o;
}

}  // namespace
}  // namespace ldpt

int main(int argc, char** argv) {
  using ldpt::Outcome;
  int only = 0;
  std::set<int> expect_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--expect-fail" && i + 1 < argc) {
      for (absl::string_view part : absl::StrSplit(argv[++i], ',')) {
        int n = 0;
        if (absl::SimpleAtoi(part, &n)) expect_fail.insert(n);
      }
    } else {
      std::fprintf(stderr, "usage: %s [--only N] [--expect-fail N,...]\n",
                   argv[0]);
      return 1;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"LDP certification",
       [] {
         return ldpt::Checks("ldp", {"ldp.rappor", "ldp.hr_bit", "ldp.rr_and_subsets"},
                             10.0);
       }},
      {"E[T] exactness",
       [] {
         return ldpt::Checks("rappor", {"rappor.mean_exact", "rappor.mean_monte_carlo"},
                             120.0);
       }},
      {"Var[T] bound",
       [] { return ldpt::Checks("rappor", {"rappor.variance_exact"}, 120.0); }},
      {"Parseval identity",
       [] { return ldpt::Checks("hadamard", {"hadamard.parseval"}, 30.0); }},
      {"Subset hashing gaps",
       [] {
         return ldpt::Checks("subsets", {"subsets.identity", "subsets.product"},
                             300.0);
       }},
      {"Z moments",
       [] { return ldpt::Checks("moments", {"moments.exact"}, 300.0); }},
      {"End-to-end error control", ldpt::EndToEnd},
      {"Separation ordering", ldpt::Separation},
      {"Reduction properties",
       [] {
         return ldpt::Checks("reduction",
                             {"reduction.tiling", "reduction.tv_preservation",
                              "reduction.marginals", "reduction.converter"},
                             60.0);
       }},
      {"Negative controls", ldpt::NegativeControls},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    const Outcome o = criteria[i].second();
    const bool waived = !o.passed && expect_fail.count(id) > 0;
    if (!o.passed && !waived) ++unexpected;
    std::printf("%s criterion %d (%s): %s\n",
                o.passed ? "PASS" : (waived ? "FAIL (expected)" : "FAIL"), id,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 2;
}
