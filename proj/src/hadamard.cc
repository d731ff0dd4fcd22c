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

#include "ldpt/hadamard.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpt {

absl::StatusOr<SignMatrix> Sylvester(int order) {
  if (order < 1 || (order & (order - 1)) != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Hadamard order must be a power of two, got ", order));
  }
  std::vector<std::int8_t> h = {1};
  for (int m = 1; m < order; m *= 2) {
    const int next = 2 * m;
    std::vector<std::int8_t> doubled(static_cast<std::size_t>(next) * next);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const std::int8_t v = h[static_cast<std::size_t>(i) * m + j];
        doubled[static_cast<std::size_t>(i) * next + j] = v;
        doubled[static_cast<std::size_t>(i) * next + j + m] = v;
        doubled[static_cast<std::size_t>(i + m) * next + j] = v;
        doubled[static_cast<std::size_t>(i + m) * next + j + m] =
            static_cast<std::int8_t>(-v);
      }
    }
    h = std::move(doubled);
  }
  return SignMatrix(order, std::move(h));
}

int HadamardOrder(int k) {
  int order = 1;
  while (order <= k) order *= 2;
  return order;
}

HadamardSpec ColumnSets(int k) {
  HadamardSpec spec;
  spec.k = k;
  spec.order = HadamardOrder(k);
  const SignMatrix h = *Sylvester(spec.order);
  spec.column_sets.reserve(spec.order);
  std::vector<int> rows;
  for (int j = 0; j < spec.order; ++j) {
    rows.clear();
    for (int i = 0; i < spec.order; ++i) {
      if (h(i, j) == 1) rows.push_back(i);
    }
    spec.column_sets.push_back(IndexSet::FromMembers(spec.order, rows));
  }
  return spec;
}

double SubsetMass(const Distribution& p, const IndexSet& c) {
  double total = 0.0;
  for (int x : c.members()) {
    if (x >= p.k()) break;
    total += p[x];
  }
  return total;
}

void WalshHadamardTransform(std::span<double> v) {
  const std::size_t n = v.size();
  for (std::size_t len = 1; len < n; len *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

}  // namespace ldpt
