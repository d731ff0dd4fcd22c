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

#include "ldpt/reduction.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpt/status_macros.h"

namespace ldpt {

absl::StatusOr<BlockLayout> BlockLayout::Create(int k) {
  if (k < 2 || k % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("block layout needs an even k >= 2, got ", k));
  }
  return BlockLayout(k);
}

Cell BlockLayout::Corner(int i) const {
  const int r = (i - 1) / ell();
  const int c = (i - 1) % ell();
  return {2 * r + 1, 4 * c + 1};
}

Cell BlockLayout::a(int i, int j) const {
  const Cell o = Corner(i);
  switch (j) {
    case 1: return {o.row, o.col};
    case 2: return {o.row, o.col + 2};
    case 3: return {o.row + 1, o.col + 1};
    default: return {o.row + 1, o.col + 3};
  }
}

Cell BlockLayout::b(int i, int j) const {
  const Cell o = Corner(i);
  switch (j) {
    case 1: return {o.row, o.col + 1};
    case 2: return {o.row, o.col + 3};
    case 3: return {o.row + 1, o.col};
    default: return {o.row + 1, o.col + 2};
  }
}

absl::StatusOr<JointDistribution> PhiMap(const Distribution& p, int k) {
  ASSIGN_OR_RETURN(const BlockLayout layout, BlockLayout::Create(k));
  if (p.k() != k * k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Phi expects a distribution over k^2 = ", k * k, " elements, got ",
        p.k()));
  }
  const int side = 2 * k;
  std::vector<double> mass(static_cast<std::size_t>(side) * side, 0.0);
  auto put = [&](Cell c, double v) {
    mass[static_cast<std::size_t>(c.row - 1) * side + (c.col - 1)] = v;
  };
  for (int i = 1; i <= layout.blocks(); ++i) {
    for (int j = 1; j <= 4; ++j) {
      put(layout.a(i, j), p[2 * i - 2] / 4.0);
      put(layout.b(i, j), p[2 * i - 1] / 4.0);
    }
  }
  return JointDistribution::Create(side, side, std::move(mass));
}

absl::StatusOr<std::pair<int, int>> PhiSampleConvert(int x, int k,
                                                     Stream& stream) {
  ASSIGN_OR_RETURN(const BlockLayout layout, BlockLayout::Create(k));
  if (x < 0 || x >= k * k) {
    return absl::InvalidArgumentError(
        absl::StrCat("sample ", x, " is outside [k^2] for k = ", k));
  }
  const int block = x / 2 + 1;
  const int j = static_cast<int>(stream.UniformInt(4)) + 1;
  const Cell c = x % 2 == 0 ? layout.a(block, j) : layout.b(block, j);
  return std::make_pair(c.row - 1, c.col - 1);
}

absl::StatusOr<JointDistribution> IndependenceHardnessInstance(
    int k, double eps, const SignPattern& z) {
  if (!(eps > 0.0 && 3.0 * eps <= 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("hardness instance needs 0 < 3 eps <= 1/2, got eps = ",
                     eps));
  }
  if (k < 2 || k % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("hardness instance needs an even k, got ", k));
  }
  ASSIGN_OR_RETURN(const Distribution pz, Paninski(k * k, 3.0 * eps, z));
  return PhiMap(pz, k);
}

}  // namespace ldpt
