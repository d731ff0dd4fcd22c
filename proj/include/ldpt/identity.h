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

#ifndef LDPT_IDENTITY_H_
#define LDPT_IDENTITY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/channels.h"
#include "ldpt/distribution.h"
#include "ldpt/smp.h"

namespace ldpt {

// Referee output. accept holds iff statistic < threshold; ties reject.
struct TestVerdict {
  bool accept = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::size_t n_used = 0;

  static TestVerdict Decide(double statistic, double threshold,
                            std::size_t n_used) {
    return {statistic < threshold, statistic, threshold, n_used};
  }
};

// Distinguish p = q from TV(p, q) > eps, or ||p-q||^2 <= lower from
// ||p-q||^2 >= upper.
struct IdentityGapMode {
  enum class Mode { kExactVsTv, kL2Gap };

  Mode mode = Mode::kExactVsTv;
  double eps = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  static IdentityGapMode ExactVsTv(double eps);
  static absl::StatusOr<IdentityGapMode> L2Gap(double lower, double upper);

  // Squared-l2 cut in distribution space over a domain of size k:
  // 2 eps^2/k for exact-vs-TV, (lower+upper)/2 for the l2 gap.
  double L2Cut(int k) const;
};

// Multipliers on closed-form thresholds. Defaults leave them untouched; the
// verification suite perturbs them for negative controls.
struct ThresholdScale {
  double rappor = 1.0;
  double hr = 1.0;
  double bias = 1.0;
  double independence = 1.0;
};

// ----- RAPPOR chi-square test -----

// N_x = number of messages with bit x set.
absl::StatusOr<std::vector<std::int64_t>> RapporCounts(
    const MessageMatrix& messages, int k);

// T = sum_x [(N_x - (n-1) l_x)^2 - N_x + (n-1) l_x^2], l_x = alpha q(x)+beta.
double RapporStatistic(std::span<const std::int64_t> counts, std::int64_t n,
                       const Distribution& q, const RapporParams& params);

// n(n-1) alpha^2 eps^2 / k.
double RapporThreshold(std::int64_t n, int k, double eps,
                       const RapporParams& params, double scale = 1.0);

absl::StatusOr<TestVerdict> RapporIdentityTest(
    std::span<const int> samples, const Distribution& q, double eps,
    double rho, std::uint64_t master_seed, const ThresholdScale& scale = {});

// ----- Hadamard response mean test -----

// U-statistic (1/(m(m-1))) sum_j sum_{i != i'} (B_ij - mu_j)(B_i'j - mu_j)
// from the column sums of an m x K bit matrix.
double MeanStatisticFromCounts(std::span<const std::int64_t> column_ones,
                               std::int64_t m, std::span<const double> mu);

// bits is row-major m x mu.size().
absl::StatusOr<TestVerdict> MeanTestL2(std::span<const std::uint8_t> bits,
                                       std::span<const double> mu_ref,
                                       double threshold);

// g = (e^rho - 1)/(2 (e^rho + 1)), so that ||mu(p)-mu(q)||^2 equals
// g^2 K ||p-q||^2.
double HrGain(double rho);

// mu(p)_j = ((e^rho-1)/(e^rho+1)) p(C_j) + 1/(e^rho+1) for j < K.
std::vector<double> HrMeans(const Distribution& p, double rho);

// g^2 K times the distribution-space cut of the gap mode.
double HrThreshold(int k, const IdentityGapMode& gap, double rho,
                   double scale = 1.0);

absl::StatusOr<TestVerdict> HrIdentityTest(std::span<const int> samples,
                                           const Distribution& q,
                                           const IdentityGapMode& gap,
                                           double rho,
                                           std::uint64_t master_seed,
                                           const ThresholdScale& scale = {});

// ----- Binary bias test and the public-coin subset test -----

// (mean - 1/(e^rho+1)) (e^rho+1)/(e^rho-1).
double DebiasRr(double mean, double rho);

// Accepts iff |debiased estimate - q_bias| < eps_prime/2. `ones` out of `m`
// privatized bits were 1.
absl::StatusOr<TestVerdict> BinaryBiasTest(std::size_t ones, std::size_t m,
                                           double q_bias, double eps_prime,
                                           double rho, double scale = 1.0);

// Players for which Hoeffding guarantees |estimate - bias| < t with
// probability at least 1 - delta: ceil(((e^rho+1)/(e^rho-1))^2 ln(2/delta)
// / (2 t^2)).
std::size_t RrEstimateSampleSize(double t, double rho, double delta);

// Repetition count T, hashing constant c and per-repetition error delta0 of
// the public-coin subset protocols. The accept rule is
// tau > 1 - (delta0 + c/4) where tau is the accepting fraction.
struct PublicCoinParams {
  int repetitions = 1;
  double c = 0.0;
  double delta0 = 0.0;

  // Literal algorithm constants: c = 1/288, delta0 = c/(2(1+c)).
  static PublicCoinParams IdentityLiteral(int repetitions);
  // Literal algorithm constants: c = 1/4096, delta0 = c/(2(1+c)).
  static PublicCoinParams IndependenceLiteral(int repetitions);

  double RejectFractionCut() const { return delta0 + c / 4.0; }
};

absl::StatusOr<TestVerdict> PublicCoinIdentityTest(
    std::span<const int> samples, const Distribution& q, double eps,
    double rho, const PublicSeed& public_seed, std::uint64_t master_seed,
    const PublicCoinParams& params, const ThresholdScale& scale = {});

// ----- Error amplification -----

// R = ceil(18 ln(1/delta)).
absl::StatusOr<int> AmplificationRepetitions(double delta);

// Runs `base` on R disjoint contiguous slices [begin, end) of n players and
// takes the majority. statistic is the rejecting fraction, threshold 1/2.
using RepeatableTest = std::function<absl::StatusOr<TestVerdict>(
    std::size_t begin, std::size_t end, int repetition)>;

absl::StatusOr<TestVerdict> Amplify(std::size_t n, double delta,
                                    const RepeatableTest& base);

}  // namespace ldpt

#endif  // LDPT_IDENTITY_H_
