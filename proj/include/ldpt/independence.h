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

#ifndef LDPT_INDEPENDENCE_H_
#define LDPT_INDEPENDENCE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/distribution.h"
#include "ldpt/identity.h"
#include "ldpt/smp.h"

namespace ldpt {

// Samples over [k] x [k] are passed flattened: (x, y) -> x * k + y.
inline int PairIndex(int x, int y, int k) { return x * k + y; }

// Inverts the column-mass system p(C_j) = (1 + (H^T p)_j)/2 for the
// Hadamard layout of [k], then clips negative entries to 0 and renormalizes
// (uniform if nothing survives). column_mass has one entry per column.
absl::StatusOr<Distribution> RecoverFromColumnMasses(
    std::span<const double> column_mass, int k);

// One-bit frequency estimate: player group j reports through
// HrBitChannel(C_j), group means are debiased into p(C_j) estimates, and the
// column-mass system is inverted. Needs n >= K.
absl::StatusOr<Distribution> HrFrequencyEstimate(std::span<const int> samples,
                                                 int k, double rho,
                                                 std::uint64_t master_seed);

struct LearnedProduct {
  Distribution p1_hat;
  Distribution p2_hat;
  double l2_error_budget = 0.0;  // eps^2/(2k^2)
};

// The first half of the players learns the row marginal, the second half
// the column marginal.
absl::StatusOr<LearnedProduct> LearnProduct(std::span<const int> pairs, int k,
                                            double eps, double rho,
                                            std::uint64_t master_seed);

// Learn-then-test: the first floor(n/2) players learn p1_hat (x) p2_hat,
// the rest run the Hadamard identity test over [k^2] against it in l2-gap
// mode (eps^2/(2k^2), 2 eps^2/k^2).
absl::StatusOr<TestVerdict> PrivateCoinIndependenceTest(
    std::span<const int> pairs, int k, double eps, double rho,
    std::uint64_t master_seed, const ThresholdScale& scale = {});

// 2x2 test from three groups of privatized indicator bits: group a reports
// 1{X=1, Y=1}, group b 1{X=1}, group c 1{Y=1}. Accepts iff
// |p~(1,1) - p~1(1) p~2(1)| < eps/4.
absl::StatusOr<TestVerdict> BinaryIndependenceTest(
    std::size_t ones_a, std::size_t m_a, std::size_t ones_b, std::size_t m_b,
    std::size_t ones_c, std::size_t m_c, double eps, double rho,
    double scale = 1.0);

// Per-group players so that each of the three estimates is within eps/16
// with probability at least 1 - delta/3.
std::size_t BinaryIndependenceGroupSize(double eps, double rho, double delta);

absl::StatusOr<TestVerdict> PublicCoinIndependenceTest(
    std::span<const int> pairs, int k, double eps, double rho,
    const PublicSeed& public_seed, std::uint64_t master_seed,
    const PublicCoinParams& params, const ThresholdScale& scale = {});

}  // namespace ldpt

#endif  // LDPT_INDEPENDENCE_H_
