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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "ldpt/channels.h"
#include "ldpt/distribution.h"
#include "ldpt/oracles.h"
#include "ldpt/smp.h"

namespace ldpt {
namespace {

TEST(IdentityTest, VerdictTiesReject) {
  EXPECT_TRUE(TestVerdict::Decide(0.9, 1.0, 3).accept);
  EXPECT_FALSE(TestVerdict::Decide(1.0, 1.0, 3).accept);
}

TEST(IdentityTest, GapModes) {
  EXPECT_FALSE(IdentityGapMode::L2Gap(0.2, 0.1).ok());
  EXPECT_FALSE(IdentityGapMode::L2Gap(-0.1, 0.1).ok());
  const IdentityGapMode g = *IdentityGapMode::L2Gap(1.0, 4.0);
  EXPECT_DOUBLE_EQ(g.L2Cut(8), 2.5);
  EXPECT_DOUBLE_EQ(IdentityGapMode::ExactVsTv(0.5).L2Cut(8), 2 * 0.25 / 8);
}

TEST(IdentityTest, RapporCountsExamples) {
  MessageMatrix m(2, 2);
  m.row(0)[0] = 0b01;
  m.row(1)[0] = 0b11;
  const std::vector<std::int64_t> n = *RapporCounts(m, 2);
  EXPECT_EQ(n, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(*RapporCounts(MessageMatrix(3, 2), 2),
            (std::vector<std::int64_t>{0, 0}));
  EXPECT_FALSE(RapporCounts(MessageMatrix(3, 4), 2).ok());
}

TEST(IdentityTest, RapporCountsCoordinateLaw) {
  const int n = 100000;
  const double rho = 1.0;
  const RapporParams params = *RapporParams::FromRho(rho);
  Stream s(4);
  const std::vector<int> samples = Sample(Distribution::Uniform(2), n, s);
  const Transcript t = *RunPrivateCoin(
      ChannelAssignment::Uniform(*RapporChannel(2, rho), n), samples, 12);
  const std::vector<std::int64_t> counts = *RapporCounts(t.messages, 2);
  const double want = params.alpha / 2 + params.beta;
  for (std::int64_t c : counts) {
    EXPECT_NEAR(static_cast<double>(c) / n, want,
                3 * std::sqrt(want * (1 - want) / n));
  }
}

TEST(IdentityTest, RapporStatisticHandExample) {
  // lambda = (0.5, 0.5) with q uniform needs alpha/2 + beta = 0.5, true for
  // every rho.
  const RapporParams params = *RapporParams::FromRho(1.0);
  const std::vector<std::int64_t> counts = {2, 1};
  EXPECT_NEAR(RapporStatistic(counts, 2, Distribution::Uniform(2), params),
              0.0, 1e-15);
  const double thr = RapporThreshold(2, 2, 0.5, params);
  EXPECT_NEAR(thr, 2 * params.alpha * params.alpha * 0.25 / 2, 1e-15);
  EXPECT_FALSE(TestVerdict::Decide(0.0, 0.0, 2).accept);
}

TEST(IdentityTest, RapporMeanMonteCarloTwoPoint) {
  const double rho = 1.0;
  const RapporParams params = *RapporParams::FromRho(rho);
  const Distribution p = *Distribution::Create({0.75, 0.25});
  const Distribution q = *Distribution::Create({0.5, 0.5});
  const Channel ch = *RapporChannel(2, rho);
  const Sampler sampler(p);
  const int n = 50;
  const int trials = 100000;
  double sum = 0, sum_sq = 0;
  std::vector<std::uint64_t> msg(1);
  Stream s(33);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::int64_t> counts(2, 0);
    for (int i = 0; i < n; ++i) {
      ch.Sample(sampler.Draw(s), s, msg);
      counts[0] += msg[0] & 1;
      counts[1] += (msg[0] >> 1) & 1;
    }
    const double v = RapporStatistic(counts, n, q, params);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
  EXPECT_NEAR(mean, 50 * 49 * params.alpha * params.alpha * 0.125, 3 * se);
}

TEST(IdentityTest, RapporIdentityTestErrors) {
  const Distribution q = Distribution::Uniform(4);
  const std::vector<int> one = {0};
  EXPECT_FALSE(RapporIdentityTest(one, q, 0.5, 1.0, 1).ok());
  const std::vector<int> two = {0, 1};
  EXPECT_FALSE(RapporIdentityTest(two, q, 1.5, 1.0, 1).ok());
  const TestVerdict v = *RapporIdentityTest(two, q, 0.5, 1.0, 1);
  EXPECT_EQ(v.n_used, 2u);
  EXPECT_EQ(v.accept, v.statistic < v.threshold);
}

TEST(IdentityTest, RapporErrorRatesAtCalibratedSize) {
  const int k = 8;
  const double eps = 0.5;
  const double rho = 1.0;
  const RapporParams params = *RapporParams::FromRho(rho);
  const auto n = static_cast<std::size_t>(
      9 * std::pow(k, 1.5) / (params.alpha * params.alpha * eps * eps) + 1);
  const Distribution q = Distribution::Uniform(k);
  const Distribution far = *Paninski(k, eps, SignPattern::AllPlus(k / 2));
  int accepts_null = 0;
  int rejects_alt = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    Stream s = Stream::Derive(8, t);
    accepts_null +=
        RapporIdentityTest(Sample(q, n, s), q, eps, rho, t)->accept;
    rejects_alt +=
        !RapporIdentityTest(Sample(far, n, s), q, eps, rho, t)->accept;
  }
  EXPECT_GE(accepts_null, 2 * trials / 3);
  EXPECT_GE(rejects_alt, 2 * trials / 3);
}

TEST(IdentityTest, MeanTestExamples) {
  const std::vector<std::uint8_t> bits = {1, 0};
  const std::vector<double> mu = {0.5};
  const TestVerdict v = *MeanTestL2(bits, mu, 0.0);
  EXPECT_DOUBLE_EQ(v.statistic, -0.25);
  EXPECT_TRUE(v.accept);
  EXPECT_FALSE(MeanTestL2(std::vector<std::uint8_t>{1}, mu, 0.0).ok());
}

TEST(IdentityTest, MeanTestMonteCarlo) {
  Stream s(41);
  const int m = 20;
  const int trials = 100000;
  for (double shift : {0.0, 0.1}) {
    const std::vector<double> mu = {0.4};
    double sum = 0, sum_sq = 0;
    for (int t = 0; t < trials; ++t) {
      std::int64_t ones = 0;
      for (int i = 0; i < m; ++i) ones += s.Bernoulli(0.4 + shift);
      const std::int64_t col[] = {ones};
      const double e = MeanStatisticFromCounts(col, m, mu);
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
    EXPECT_NEAR(mean, shift * shift, 3 * se);
  }
}

TEST(IdentityTest, HrMeansAndIsometry) {
  Stream s(2);
  for (int t = 0; t < 20; ++t) {
    const Distribution p = oracle::RandomDistribution(8, s);
    const Distribution q = oracle::RandomDistribution(8, s);
    for (double rho : {0.5, 1.0}) {
      const std::vector<double> a = HrMeans(p, rho);
      const std::vector<double> b = HrMeans(q, rho);
      double lhs = 0;
      for (std::size_t j = 0; j < a.size(); ++j) lhs += (a[j] - b[j]) * (a[j] - b[j]);
      const double g = HrGain(rho);
      EXPECT_NEAR(lhs, g * g * 16 * *L2DistanceSq(p, q), 1e-10);
    }
  }
}

TEST(IdentityTest, HrThresholds) {
  const double g = HrGain(1.0);
  EXPECT_NEAR(HrThreshold(16, IdentityGapMode::ExactVsTv(0.5), 1.0),
              g * g * 32 * 2 * 0.25 / 16, 1e-15);
  const IdentityGapMode gap = *IdentityGapMode::L2Gap(0.25 / 16, 1.0 / 16);
  EXPECT_NEAR(HrThreshold(16, gap, 1.0), g * g * 32 * 2.5 * 0.25 / 16, 1e-15);
}

TEST(IdentityTest, HrIdentityTestNullUnbiased) {
  const int k = 4;
  const Distribution q = Distribution::Uniform(k);
  const int n = 800;
  const int trials = 2000;
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    Stream s = Stream::Derive(3, t);
    const double v =
        HrIdentityTest(Sample(q, n, s), q, IdentityGapMode::ExactVsTv(0.5),
                       1.0, t)
            ->statistic;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
  EXPECT_NEAR(mean, 0.0, 3 * se);
  const std::vector<int> few(7, 0);
  EXPECT_FALSE(HrIdentityTest(few, q, IdentityGapMode::ExactVsTv(0.5), 1.0, 1).ok());
}

TEST(IdentityTest, BiasTestAndDebias) {
  const double rho = 2.0;
  const double hi = std::exp(rho) / (std::exp(rho) + 1.0);
  EXPECT_NEAR(DebiasRr(hi, rho), 1.0, 1e-12);
  EXPECT_NEAR(DebiasRr(1.0 - hi, rho), 0.0, 1e-12);
  EXPECT_FALSE(BinaryBiasTest(0, 0, 0.5, 0.1, 1.0).ok());
  const TestVerdict v = *BinaryBiasTest(50, 100, 0.5, 0.2, 1.0);
  EXPECT_DOUBLE_EQ(v.threshold, 0.1);
  EXPECT_TRUE(v.accept);
}

TEST(IdentityTest, BiasTestCalibratedErrorRates) {
  const double rho = 1.0;
  const double eps_prime = 0.2;
  const double delta0 = 0.1;
  const std::size_t m = RrEstimateSampleSize(eps_prime / 2, rho, delta0);
  const Channel ch = *RrBinaryChannel(rho);
  const double q_bias = 0.3;
  int null_accept = 0;
  int alt_reject = 0;
  const int trials = 500;
  Stream s(6);
  for (int t = 0; t < trials; ++t) {
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < m; ++i) {
      a += ch.SampleBit(s.Bernoulli(q_bias), s);
      b += ch.SampleBit(s.Bernoulli(q_bias + eps_prime), s);
    }
    null_accept += BinaryBiasTest(a, m, q_bias, eps_prime, rho)->accept;
    alt_reject += !BinaryBiasTest(b, m, q_bias, eps_prime, rho)->accept;
  }
  EXPECT_GE(null_accept, (1 - delta0) * trials);
  EXPECT_GE(alt_reject, (1 - delta0) * trials);
}

TEST(IdentityTest, PublicCoinNullAccepts) {
  const int k = 16;
  const Distribution q = Distribution::Uniform(k);
  const PublicCoinParams params{1, 0.5, 1.0 / 3.0};
  int accepts = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    Stream s = Stream::Derive(10, t);
    accepts += PublicCoinIdentityTest(Sample(q, 2000, s), q, 0.5, 1.0,
                                      PublicSeed{static_cast<std::uint64_t>(t)},
                                      t, params)
                   ->accept;
  }
  EXPECT_GE(accepts, 2 * trials / 3);
}

TEST(IdentityTest, PublicCoinIsDeterministic) {
  const Distribution q = Distribution::Uniform(8);
  Stream s(1);
  const std::vector<int> samples = Sample(q, 600, s);
  const PublicCoinParams params = PublicCoinParams::IdentityLiteral(3);
  const TestVerdict a =
      *PublicCoinIdentityTest(samples, q, 0.5, 1.0, PublicSeed{4}, 5, params);
  const TestVerdict b =
      *PublicCoinIdentityTest(samples, q, 0.5, 1.0, PublicSeed{4}, 5, params);
  EXPECT_EQ(a.statistic, b.statistic);
  EXPECT_EQ(a.accept, b.accept);
  EXPECT_DOUBLE_EQ(params.c, 1.0 / 288.0);
  const std::vector<int> two = {0, 1};
  EXPECT_FALSE(
      PublicCoinIdentityTest(two, q, 0.5, 1.0, PublicSeed{4}, 5, params).ok());
}

TEST(IdentityTest, TwoPointSubsetPerturbation) {
  const Distribution p = *Distribution::Create({1, 0});
  const Distribution q = *Distribution::Create({0, 1});
  EXPECT_DOUBLE_EQ(oracle::SubsetPerturbationFraction(p, q, 1.0 - 1e-12), 0.5);
}

TEST(IdentityTest, AmplificationRepetitions) {
  EXPECT_EQ(*AmplificationRepetitions(1.0 / 3.0), 20);
  EXPECT_FALSE(AmplificationRepetitions(0.0).ok());
}

TEST(IdentityTest, AmplifyUnanimousStub) {
  const RepeatableTest yes = [](std::size_t, std::size_t, int) {
    return absl::StatusOr<TestVerdict>(TestVerdict::Decide(0.0, 1.0, 1));
  };
  EXPECT_TRUE(Amplify(100, 0.1, yes)->accept);
  EXPECT_FALSE(Amplify(10, 0.1, yes).ok());
}

TEST(IdentityTest, AmplifySimulatedErrors) {
  const double delta = 0.05;
  int wrong = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    Stream s = Stream::Derive(77, t);
    const RepeatableTest base = [&s](std::size_t, std::size_t, int) {
      // Correct answer is "accept"; errs with probability 1/3.
      const bool err = s.Uniform() < 1.0 / 3.0;
      return absl::StatusOr<TestVerdict>(
          TestVerdict::Decide(err ? 2.0 : 0.0, 1.0, 1));
    };
    wrong += !Amplify(1000, delta, base)->accept;
  }
  EXPECT_LE(static_cast<double>(wrong) / trials, delta);
}

}  // namespace
}  // namespace ldpt
