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

#ifndef LDPT_REDUCTION_H_
#define LDPT_REDUCTION_H_

#include <array>
#include <utility>

#include "absl/status/statusor.h"
#include "ldpt/distribution.h"
#include "ldpt/random.h"

namespace ldpt {

// 1-based (row, col) cell of the [2k] x [2k] grid.
struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Block arrangement of [2k] x [2k] for even k, l = k/2. Block B_i,
// i = 1..2l^2, sits in rows 2r+1..2r+2 and columns 4c+1..4c+4 with
// r = floor((i-1)/l), c = (i-1) mod l, laid out as
//
//   a1 b1 a2 b2
//   b3 a3 b4 a4
class BlockLayout {
 public:
  static absl::StatusOr<BlockLayout> Create(int k);

  int k() const { return k_; }
  int ell() const { return k_ / 2; }
  int blocks() const { return 2 * ell() * ell(); }

  // i in 1..blocks(), j in 1..4.
  Cell a(int i, int j) const;
  Cell b(int i, int j) const;

 private:
  explicit BlockLayout(int k) : k_(k) {}
  Cell Corner(int i) const;

  int k_;
};

// Phi(p) over [2k] x [2k] for p over [k^2]: the four a-cells of B_i carry
// p(2i-1)/4 and the four b-cells carry p(2i)/4 (1-based domain elements).
absl::StatusOr<JointDistribution> PhiMap(const Distribution& p, int k);

// Converts one sample x of p (0-based, in [k^2]) into a sample of Phi(p):
// a uniformly random one of the four cells carrying x's mass. Returns the
// 0-based (row, col).
absl::StatusOr<std::pair<int, int>> PhiSampleConvert(int x, int k,
                                                     Stream& stream);

// Phi(p_z) with p_z the Paninski perturbation of uniform([k^2]) at
// gamma = 3 eps. Needs even k and 0 < 3 eps <= 1/2.
absl::StatusOr<JointDistribution> IndependenceHardnessInstance(
    int k, double eps, const SignPattern& z);

}  // namespace ldpt

#endif  // LDPT_REDUCTION_H_
