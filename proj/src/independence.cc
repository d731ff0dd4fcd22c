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

#include "ldpt/independence.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpt/hadamard.h"
#include "ldpt/status_macros.h"

namespace ldpt {
namespace {

absl::Status ValidateEps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must lie in (0, 1), got ", eps));
  }
  return absl::OkStatus();
}

absl::Status ValidatePairs(std::span<const int> pairs, int k) {
  if (k < 1) return absl::InvalidArgumentError("k must be positive");
  const int cells = k * k;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i] < 0 || pairs[i] >= cells) {
      return absl::InvalidArgumentError(absl::StrCat(
          "pair sample ", pairs[i], " of player ", i, " is outside [k]x[k]"));
    }
  }
  return absl::OkStatus();
}

std::vector<std::uint32_t> GroupChannels(const GroupPartition& part) {
  std::vector<std::uint32_t> of(part.group_of.size());
  for (std::size_t i = 0; i < of.size(); ++i) {
    of[i] = part.group_of[i] < 0 ? ChannelAssignment::kSilent
                                 : static_cast<std::uint32_t>(part.group_of[i]);
  }
  return of;
}

}  // namespace

absl::StatusOr<Distribution> RecoverFromColumnMasses(
    std::span<const double> column_mass, int k) {
  const int big_k = HadamardOrder(k);
  if (column_mass.size() != static_cast<std::size_t>(big_k)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", big_k, " column masses, got ", column_mass.size()));
  }
  std::vector<double> v(big_k);
  for (int j = 0; j < big_k; ++j) v[j] = 2.0 * column_mass[j] - 1.0;
  WalshHadamardTransform(v);
  std::vector<double> p(k);
  double total = 0.0;
  for (int x = 0; x < k; ++x) {
    p[x] = std::max(0.0, v[x] / big_k);
    total += p[x];
  }
  if (total <= 0.0) return Distribution::Uniform(k);
  for (double& m : p) m /= total;
  return Distribution::Create(std::move(p));
}

absl::StatusOr<Distribution> HrFrequencyEstimate(std::span<const int> samples,
                                                 int k, double rho,
                                                 std::uint64_t master_seed) {
  const HadamardSpec spec = ColumnSets(k);
  const int big_k = spec.order;
  if (samples.size() < static_cast<std::size_t>(big_k)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "frequency estimate needs n >= K = ", big_k, ", got ",
        samples.size()));
  }
  ASSIGN_OR_RETURN(const GroupPartition part,
                   PartitionPlayers(samples.size(), big_k));
  ChannelAssignment assignment;
  for (int j = 0; j < big_k; ++j) {
    ASSIGN_OR_RETURN(Channel ch, HrBitChannel(spec.column_sets[j], k, rho));
    assignment.channels.push_back(std::move(ch));
  }
  assignment.channel_of = GroupChannels(part);
  ASSIGN_OR_RETURN(const Transcript t,
                   RunPrivateCoin(assignment, samples, master_seed));
  std::vector<double> column_mass(big_k);
  for (int j = 0; j < big_k; ++j) {
    const double mean =
        static_cast<double>(CountOnes(t.messages, part.begin(j), part.end(j))) /
        static_cast<double>(part.group_size);
    column_mass[j] = DebiasRr(mean, rho);
  }
  return RecoverFromColumnMasses(column_mass, k);
}

absl::StatusOr<LearnedProduct> LearnProduct(std::span<const int> pairs, int k,
                                            double eps, double rho,
                                            std::uint64_t master_seed) {
  RETURN_IF_ERROR(ValidatePairs(pairs, k));
  const std::size_t half = pairs.size() / 2;
  std::vector<int> xs(half);
  std::vector<int> ys(pairs.size() - half);
  for (std::size_t i = 0; i < half; ++i) xs[i] = pairs[i] / k;
  for (std::size_t i = half; i < pairs.size(); ++i) ys[i - half] = pairs[i] % k;
  ASSIGN_OR_RETURN(Distribution p1,
                   HrFrequencyEstimate(xs, k, rho, DeriveSeed(master_seed, 0)));
  ASSIGN_OR_RETURN(Distribution p2,
                   HrFrequencyEstimate(ys, k, rho, DeriveSeed(master_seed, 1)));
  return LearnedProduct{std::move(p1), std::move(p2),
                        eps * eps / (2.0 * k * k)};
}

absl::StatusOr<TestVerdict> PrivateCoinIndependenceTest(
    std::span<const int> pairs, int k, double eps, double rho,
    std::uint64_t master_seed, const ThresholdScale& scale) {
  RETURN_IF_ERROR(ValidateEps(eps));
  RETURN_IF_ERROR(ValidatePairs(pairs, k));
  const std::size_t half = pairs.size() / 2;
  const int needed = 2 * HadamardOrder(k) + 2 * HadamardOrder(k * k);
  if (pairs.size() < static_cast<std::size_t>(needed)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "learn-then-test needs at least ", needed, " players, got ",
        pairs.size()));
  }
  ASSIGN_OR_RETURN(const LearnedProduct learned,
                   LearnProduct(pairs.first(half), k, eps, rho,
                                DeriveSeed(master_seed, 0)));
  const Distribution reference =
      Product(learned.p1_hat, learned.p2_hat).Flatten();
  const double k2 = static_cast<double>(k) * k;
  ASSIGN_OR_RETURN(const IdentityGapMode gap,
                   IdentityGapMode::L2Gap(eps * eps / (2.0 * k2),
                                          2.0 * eps * eps / k2));
  ASSIGN_OR_RETURN(TestVerdict v,
                   HrIdentityTest(pairs.subspan(half), reference, gap, rho,
                                  DeriveSeed(master_seed, 1), scale));
  v.n_used += half;
  return v;
}

absl::StatusOr<TestVerdict> BinaryIndependenceTest(
    std::size_t ones_a, std::size_t m_a, std::size_t ones_b, std::size_t m_b,
    std::size_t ones_c, std::size_t m_c, double eps, double rho,
    double scale) {
  if (m_a == 0 || m_b == 0 || m_c == 0) {
    return absl::InvalidArgumentError(
        "independence test needs players in all three groups");
  }
  if (ones_a > m_a || ones_b > m_b || ones_c > m_c) {
    return absl::InvalidArgumentError("more ones than bits");
  }
  auto estimate = [rho](std::size_t ones, std::size_t m) {
    return DebiasRr(static_cast<double>(ones) / static_cast<double>(m), rho);
  };
  const double joint = estimate(ones_a, m_a);
  const double row = estimate(ones_b, m_b);
  const double col = estimate(ones_c, m_c);
  return TestVerdict::Decide(std::abs(joint - row * col), scale * eps / 4.0,
                             m_a + m_b + m_c);
}

std::size_t BinaryIndependenceGroupSize(double eps, double rho, double delta) {
  return RrEstimateSampleSize(eps / 16.0, rho, delta / 3.0);
}

absl::StatusOr<TestVerdict> PublicCoinIndependenceTest(
    std::span<const int> pairs, int k, double eps, double rho,
    const PublicSeed& public_seed, std::uint64_t master_seed,
    const PublicCoinParams& params, const ThresholdScale& scale) {
  RETURN_IF_ERROR(ValidateEps(eps));
  RETURN_IF_ERROR(ValidatePairs(pairs, k));
  const int reps = params.repetitions;
  if (reps < 1) return absl::InvalidArgumentError("need T_reps >= 1");
  ASSIGN_OR_RETURN(const GroupPartition part,
                   PartitionPlayers(pairs.size(), 3 * reps));
  // S_{1,t} and S_{2,t} for every repetition, from the shared stream.
  auto subsets = [k, reps](const PublicSeed& seed) {
    const Stream shared = seed.stream();
    std::vector<IndexSet> sets;
    for (int t = 0; t < 2 * reps; ++t) {
      Stream s = shared.Split(t);
      sets.push_back(IndexSet::Random(k, s));
    }
    return sets;
  };
  const int cells = k * k;
  const ProtocolSetup setup =
      [&](const PublicSeed& seed) -> absl::StatusOr<ChannelAssignment> {
    const std::vector<IndexSet> sets = subsets(seed);
    ChannelAssignment a;
    std::vector<int> both, rows, cols;
    for (int t = 0; t < reps; ++t) {
      const IndexSet& s1 = sets[2 * t];
      const IndexSet& s2 = sets[2 * t + 1];
      both.clear();
      rows.clear();
      cols.clear();
      for (int x = 0; x < k; ++x) {
        for (int y = 0; y < k; ++y) {
          const int cell = PairIndex(x, y, k);
          if (s1.Contains(x) && s2.Contains(y)) both.push_back(cell);
          if (s1.Contains(x)) rows.push_back(cell);
          if (s2.Contains(y)) cols.push_back(cell);
        }
      }
      for (const std::vector<int>* members : {&both, &rows, &cols}) {
        ASSIGN_OR_RETURN(
            Channel ch,
            SubsetThenRr(IndexSet::FromMembers(cells, *members), rho));
        a.channels.push_back(std::move(ch));
      }
    }
    a.channel_of = GroupChannels(part);
    return a;
  };
  ASSIGN_OR_RETURN(const Transcript t,
                   RunPublicCoin(setup, pairs, public_seed, master_seed));
  const double eps_prime = eps / std::sqrt(8.0 * k);
  const std::size_t m = part.group_size;
  int rejects = 0;
  for (int r = 0; r < reps; ++r) {
    const int g = 3 * r;
    ASSIGN_OR_RETURN(
        const TestVerdict v,
        BinaryIndependenceTest(
            CountOnes(t.messages, part.begin(g), part.end(g)), m,
            CountOnes(t.messages, part.begin(g + 1), part.end(g + 1)), m,
            CountOnes(t.messages, part.begin(g + 2), part.end(g + 2)), m,
            eps_prime, rho, scale.independence));
    if (!v.accept) ++rejects;
  }
  return TestVerdict::Decide(static_cast<double>(rejects) / reps,
                             params.RejectFractionCut(),
                             pairs.size() - part.dropped);
}

}  // namespace ldpt
