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

#include "ldpt/identity.h"

#include <bit>
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

std::vector<IndexSet> PublicSubsets(const PublicSeed& seed, int count,
                                    int universe) {
  const Stream shared = seed.stream();
  std::vector<IndexSet> sets;
  sets.reserve(count);
  for (int t = 0; t < count; ++t) {
    Stream s = shared.Split(t);
    sets.push_back(IndexSet::Random(universe, s));
  }
  return sets;
}

}  // namespace

IdentityGapMode IdentityGapMode::ExactVsTv(double eps) {
  IdentityGapMode gap;
  gap.mode = Mode::kExactVsTv;
  gap.eps = eps;
  return gap;
}

absl::StatusOr<IdentityGapMode> IdentityGapMode::L2Gap(double lower,
                                                       double upper) {
  if (!(lower >= 0.0 && lower < upper)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "l2 gap needs 0 <= lower < upper, got ", lower, " and ", upper));
  }
  IdentityGapMode gap;
  gap.mode = Mode::kL2Gap;
  gap.lower = lower;
  gap.upper = upper;
  return gap;
}

double IdentityGapMode::L2Cut(int k) const {
  if (mode == Mode::kExactVsTv) return 2.0 * eps * eps / k;
  return 0.5 * (lower + upper);
}

absl::StatusOr<std::vector<std::int64_t>> RapporCounts(
    const MessageMatrix& messages, int k) {
  if (messages.rows() > 0 && messages.width() != k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "messages have width ", messages.width(), ", expected ", k));
  }
  std::vector<std::int64_t> counts(k, 0);
  for (std::size_t i = 0; i < messages.rows(); ++i) {
    const auto row = messages.row(i);
    for (int w = 0; w < messages.words_per_row(); ++w) {
      std::uint64_t bits = row[w];
      while (bits != 0) {
        ++counts[64 * w + std::countr_zero(bits)];
        bits &= bits - 1;
      }
    }
  }
  return counts;
}

double RapporStatistic(std::span<const std::int64_t> counts, std::int64_t n,
                       const Distribution& q, const RapporParams& params) {
  const double m = static_cast<double>(n - 1);
  double t = 0.0;
  for (int x = 0; x < q.k(); ++x) {
    const double lambda = params.alpha * q[x] + params.beta;
    const double nx = static_cast<double>(counts[x]);
    const double d = nx - m * lambda;
    t += d * d - nx + m * lambda * lambda;
  }
  return t;
}

double RapporThreshold(std::int64_t n, int k, double eps,
                       const RapporParams& params, double scale) {
  const double nn = static_cast<double>(n);
  return scale * nn * (nn - 1.0) * params.alpha * params.alpha * eps * eps / k;
}

absl::StatusOr<TestVerdict> RapporIdentityTest(std::span<const int> samples,
                                               const Distribution& q,
                                               double eps, double rho,
                                               std::uint64_t master_seed,
                                               const ThresholdScale& scale) {
  RETURN_IF_ERROR(ValidateEps(eps));
  if (samples.size() < 2) {
    return absl::InvalidArgumentError("RAPPOR test needs at least 2 players");
  }
  ASSIGN_OR_RETURN(const RapporParams params, RapporParams::FromRho(rho));
  ASSIGN_OR_RETURN(Channel channel, RapporChannel(q.k(), rho));
  ASSIGN_OR_RETURN(
      const Transcript t,
      RunPrivateCoin(ChannelAssignment::Uniform(std::move(channel),
                                                samples.size()),
                     samples, master_seed));
  ASSIGN_OR_RETURN(const std::vector<std::int64_t> counts,
                   RapporCounts(t.messages, q.k()));
  const auto n = static_cast<std::int64_t>(samples.size());
  return TestVerdict::Decide(RapporStatistic(counts, n, q, params),
                             RapporThreshold(n, q.k(), eps, params,
                                             scale.rappor),
                             samples.size());
}

double MeanStatisticFromCounts(std::span<const std::int64_t> column_ones,
                               std::int64_t m, std::span<const double> mu) {
  const double mm = static_cast<double>(m);
  double total = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const double s = static_cast<double>(column_ones[j]);
    const double centered = s - mm * mu[j];
    const double diag =
        s * (1.0 - mu[j]) * (1.0 - mu[j]) + (mm - s) * mu[j] * mu[j];
    total += centered * centered - diag;
  }
  return total / (mm * (mm - 1.0));
}

absl::StatusOr<TestVerdict> MeanTestL2(std::span<const std::uint8_t> bits,
                                       std::span<const double> mu_ref,
                                       double threshold) {
  const std::size_t cols = mu_ref.size();
  if (cols == 0 || bits.size() % cols != 0) {
    return absl::InvalidArgumentError("bit matrix does not match mu_ref");
  }
  const std::size_t m = bits.size() / cols;
  if (m < 2) return absl::InvalidArgumentError("mean test needs m >= 2");
  std::vector<std::int64_t> ones(cols, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) ones[j] += bits[i * cols + j] != 0;
  }
  return TestVerdict::Decide(
      MeanStatisticFromCounts(ones, static_cast<std::int64_t>(m), mu_ref),
      threshold, m * cols);
}

double HrGain(double rho) {
  const double e = std::exp(rho);
  return (e - 1.0) / (2.0 * (e + 1.0));
}

std::vector<double> HrMeans(const Distribution& p, double rho) {
  const double e = std::exp(rho);
  const double slope = (e - 1.0) / (e + 1.0);
  const double offset = 1.0 / (e + 1.0);
  const HadamardSpec spec = ColumnSets(p.k());
  std::vector<double> mu(spec.order);
  for (int j = 0; j < spec.order; ++j) {
    mu[j] = slope * SubsetMass(p, spec.column_sets[j]) + offset;
  }
  return mu;
}

double HrThreshold(int k, const IdentityGapMode& gap, double rho,
                   double scale) {
  const double g = HrGain(rho);
  return scale * g * g * HadamardOrder(k) * gap.L2Cut(k);
}

absl::StatusOr<TestVerdict> HrIdentityTest(std::span<const int> samples,
                                           const Distribution& q,
                                           const IdentityGapMode& gap,
                                           double rho,
                                           std::uint64_t master_seed,
                                           const ThresholdScale& scale) {
  if (gap.mode == IdentityGapMode::Mode::kExactVsTv) {
    RETURN_IF_ERROR(ValidateEps(gap.eps));
  }
  const int k = q.k();
  const HadamardSpec spec = ColumnSets(k);
  const int big_k = spec.order;
  if (samples.size() < static_cast<std::size_t>(big_k)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Hadamard test needs n >= K = ", big_k, ", got ", samples.size()));
  }
  ASSIGN_OR_RETURN(const GroupPartition part,
                   PartitionPlayers(samples.size(), big_k));
  if (part.group_size < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Hadamard test needs at least 2 players per group (n >= ", 2 * big_k,
        ")"));
  }
  ChannelAssignment assignment;
  assignment.channels.reserve(big_k);
  for (int j = 0; j < big_k; ++j) {
    ASSIGN_OR_RETURN(Channel ch, HrBitChannel(spec.column_sets[j], k, rho));
    assignment.channels.push_back(std::move(ch));
  }
  assignment.channel_of.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int g = part.group_of[i];
    assignment.channel_of[i] =
        g < 0 ? ChannelAssignment::kSilent : static_cast<std::uint32_t>(g);
  }
  ASSIGN_OR_RETURN(const Transcript t,
                   RunPrivateCoin(assignment, samples, master_seed));
  std::vector<std::int64_t> ones(big_k);
  for (int j = 0; j < big_k; ++j) {
    ones[j] = static_cast<std::int64_t>(
        CountOnes(t.messages, part.begin(j), part.end(j)));
  }
  const std::vector<double> mu = HrMeans(q, rho);
  const auto m = static_cast<std::int64_t>(part.group_size);
  return TestVerdict::Decide(MeanStatisticFromCounts(ones, m, mu),
                             HrThreshold(k, gap, rho, scale.hr),
                             samples.size() - part.dropped);
}

double DebiasRr(double mean, double rho) {
  const double e = std::exp(rho);
  return (mean - 1.0 / (e + 1.0)) * (e + 1.0) / (e - 1.0);
}

absl::StatusOr<TestVerdict> BinaryBiasTest(std::size_t ones, std::size_t m,
                                           double q_bias, double eps_prime,
                                           double rho, double scale) {
  if (m == 0) return absl::InvalidArgumentError("bias test needs bits");
  if (ones > m) return absl::InvalidArgumentError("more ones than bits");
  const double mean = static_cast<double>(ones) / static_cast<double>(m);
  const double estimate = DebiasRr(mean, rho);
  return TestVerdict::Decide(std::abs(estimate - q_bias),
                             scale * eps_prime / 2.0, m);
}

std::size_t RrEstimateSampleSize(double t, double rho, double delta) {
  const double e = std::exp(rho);
  const double amp = (e + 1.0) / (e - 1.0);
  return static_cast<std::size_t>(
      std::ceil(amp * amp * std::log(2.0 / delta) / (2.0 * t * t)));
}

PublicCoinParams PublicCoinParams::IdentityLiteral(int repetitions) {
  const double c = 1.0 / 288.0;
  return {repetitions, c, c / (2.0 * (1.0 + c))};
}

PublicCoinParams PublicCoinParams::IndependenceLiteral(int repetitions) {
  const double c = 1.0 / 4096.0;
  return {repetitions, c, c / (2.0 * (1.0 + c))};
}

absl::StatusOr<TestVerdict> PublicCoinIdentityTest(
    std::span<const int> samples, const Distribution& q, double eps,
    double rho, const PublicSeed& public_seed, std::uint64_t master_seed,
    const PublicCoinParams& params, const ThresholdScale& scale) {
  RETURN_IF_ERROR(ValidateEps(eps));
  const int k = q.k();
  const int reps = params.repetitions;
  ASSIGN_OR_RETURN(const GroupPartition part,
                   PartitionPlayers(samples.size(), reps));
  const ProtocolSetup setup =
      [&](const PublicSeed& seed) -> absl::StatusOr<ChannelAssignment> {
    ChannelAssignment a;
    for (const IndexSet& s : PublicSubsets(seed, reps, k)) {
      ASSIGN_OR_RETURN(Channel ch, SubsetThenRr(s, rho));
      a.channels.push_back(std::move(ch));
    }
    a.channel_of.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const int g = part.group_of[i];
      a.channel_of[i] =
          g < 0 ? ChannelAssignment::kSilent : static_cast<std::uint32_t>(g);
    }
    return a;
  };
  ASSIGN_OR_RETURN(const Transcript t,
                   RunPublicCoin(setup, samples, public_seed, master_seed));
  // The referee also holds V and recomputes the subsets.
  const std::vector<IndexSet> subsets = PublicSubsets(public_seed, reps, k);
  const double eps_prime = eps / std::sqrt(2.0 * k);
  int rejects = 0;
  for (int r = 0; r < reps; ++r) {
    ASSIGN_OR_RETURN(
        const TestVerdict v,
        BinaryBiasTest(CountOnes(t.messages, part.begin(r), part.end(r)),
                       part.group_size, SubsetMass(q, subsets[r]), eps_prime,
                       rho, scale.bias));
    if (!v.accept) ++rejects;
  }
  return TestVerdict::Decide(static_cast<double>(rejects) / reps,
                             params.RejectFractionCut(),
                             samples.size() - part.dropped);
}

absl::StatusOr<int> AmplificationRepetitions(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return static_cast<int>(std::ceil(18.0 * std::log(1.0 / delta)));
}

absl::StatusOr<TestVerdict> Amplify(std::size_t n, double delta,
                                    const RepeatableTest& base) {
  ASSIGN_OR_RETURN(const int reps, AmplificationRepetitions(delta));
  ASSIGN_OR_RETURN(const GroupPartition part, PartitionPlayers(n, reps));
  int rejects = 0;
  std::size_t used = 0;
  for (int r = 0; r < reps; ++r) {
    ASSIGN_OR_RETURN(const TestVerdict v,
                     base(part.begin(r), part.end(r), r));
    if (!v.accept) ++rejects;
    used += v.n_used;
  }
  return TestVerdict::Decide(static_cast<double>(rejects) / reps, 0.5, used);
}

}  // namespace ldpt
