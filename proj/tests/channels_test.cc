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

#include "ldpt/channels.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "ldpt/distribution.h"
#include "ldpt/hadamard.h"

namespace ldpt {
namespace {

TEST(ChannelsTest, RapporParams) {
  const RapporParams p = *RapporParams::FromRho(2.0);
  EXPECT_NEAR(p.alpha, 0.462117, 1e-6);
  EXPECT_NEAR(p.beta, 0.268941, 1e-6);
  EXPECT_NEAR(p.alpha, 1.0 - 2.0 * p.flip, 1e-12);
  EXPECT_FALSE(RapporParams::FromRho(0.0).ok());
  EXPECT_FALSE(RapporParams::FromRho(-1.0).ok());
  EXPECT_FALSE(RapporChannel(3, std::nan("")).ok());
}

TEST(ChannelsTest, RapporPerBitProduct) {
  const Channel ch = *Channel::Rappor(2, 1.0, 0.25);
  // x = 0 (first element), message has bit 0 set and bit 1 clear.
  EXPECT_DOUBLE_EQ(ch.Probability(0b01, 0), 0.5625);
  EXPECT_DOUBLE_EQ(ch.Probability(0b10, 0), 0.0625);
}

TEST(ChannelsTest, RapporRatioIsExp) {
  for (int k : {2, 3}) {
    EXPECT_NEAR(*LdpRatio(*RapporChannel(k, 1.3)), std::exp(1.3), 1e-12);
  }
  EXPECT_NEAR(*LdpRatio(*RapporChannel(3, 0.5)), std::exp(0.5), 1e-12);
  EXPECT_TRUE(CertifiesLdp(*LdpRatio(*RapporChannel(5, 0.5)), 0.5));
}

TEST(ChannelsTest, HrBitExamples) {
  const double rho = std::log(3.0);
  const int c[] = {0, 1};
  const Channel ch = *HrBitChannel(IndexSet::FromMembers(4, c), 3, rho);
  EXPECT_NEAR(ch.Probability(1, 0), 0.75, 1e-12);
  EXPECT_NEAR(ch.Probability(1, 2), 0.25, 1e-12);
  EXPECT_NEAR(*LdpRatio(ch), 3.0, 1e-12);

  const Channel empty = *HrBitChannel(IndexSet::Empty(4), 3, rho);
  for (int x = 0; x < 3; ++x) EXPECT_NEAR(empty.Probability(1, x), 0.25, 1e-12);
  EXPECT_FALSE(HrBitChannel(IndexSet::Empty(2), 3, rho).ok());
}

TEST(ChannelsTest, RrBinaryExamples) {
  const Channel ch = *RrBinaryChannel(std::log(3.0));
  EXPECT_NEAR(ch.flip(), 0.25, 1e-12);
  EXPECT_NEAR(ch.Probability(1, 1), 0.75, 1e-12);
  EXPECT_NEAR(ch.Probability(1, 0), 0.25, 1e-12);
  EXPECT_NEAR(*LdpRatio(ch), 3.0, 1e-12);
  EXPECT_NEAR(*LdpRatio(*RrBinaryChannel(1.0)), std::exp(1.0), 1e-12);
  EXPECT_FALSE(RrBinaryChannel(0.0).ok());
}

TEST(ChannelsTest, SubsetThenRrExamples) {
  const double rho = 1.0;
  const double hi = std::exp(rho) / (std::exp(rho) + 1.0);
  const Channel full = *SubsetThenRr(IndexSet::Full(4), rho);
  const Channel none = *SubsetThenRr(IndexSet::Empty(4), rho);
  for (int x = 0; x < 4; ++x) {
    EXPECT_NEAR(full.Probability(1, x), hi, 1e-12);
    EXPECT_NEAR(none.Probability(1, x), 1.0 - hi, 1e-12);
  }
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<int> m;
    for (int x = 0; x < 4; ++x) {
      if ((mask >> x) & 1u) m.push_back(x);
    }
    EXPECT_TRUE(CertifiesLdp(
        *LdpRatio(*SubsetThenRr(IndexSet::FromMembers(4, m), rho)), rho));
  }
}

TEST(ChannelsTest, RatioSentinels) {
  const Channel id = *Channel::Tabular({{1.0, 0.0}, {0.0, 1.0}}, 1.0);
  EXPECT_TRUE(std::isinf(*LdpRatio(id)));
  const absl::StatusOr<double> wide = LdpRatio(*RapporChannel(30, 1.0));
  ASSERT_FALSE(wide.ok());
  EXPECT_EQ(wide.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(Channel::Tabular({{0.5, 0.4}}, 1.0).ok());
}

TEST(ChannelsTest, EveryShippedChannelCertifies) {
  for (double rho : {0.25, 0.5, 1.0, 2.0}) {
    for (int k = 1; k <= 12; ++k) {
      const double want = k == 1 ? 1.0 : std::exp(rho);
      EXPECT_NEAR(*LdpRatio(*RapporChannel(k, rho)) / want, 1.0, 1e-12);
    }
    for (const IndexSet& c : ColumnSets(9).column_sets) {
      EXPECT_TRUE(CertifiesLdp(*LdpRatio(*HrBitChannel(c, 9, rho)), rho));
    }
  }
}

TEST(ChannelsTest, RapporCoordinateLawMonteCarlo) {
  const double rho = 1.0;
  const Channel ch = *RapporChannel(3, rho);
  const RapporParams params = *RapporParams::FromRho(rho);
  const Distribution p = *Distribution::Create({0.2, 0.3, 0.5});
  const Sampler sampler(p);
  Stream s(77);
  const int n = 1000000;
  std::vector<int> ones(3, 0);
  std::vector<std::uint64_t> msg(1);
  for (int i = 0; i < n; ++i) {
    ch.Sample(sampler.Draw(s), s, msg);
    for (int j = 0; j < 3; ++j) ones[j] += (msg[0] >> j) & 1;
  }
  for (int j = 0; j < 3; ++j) {
    const double want = params.alpha * p[j] + params.beta;
    const double se = std::sqrt(want * (1 - want) / n);
    EXPECT_NEAR(static_cast<double>(ones[j]) / n, want, 3 * se);
  }
}

TEST(ChannelsTest, OneBitSamplerAgreesWithEvaluator) {
  const Channel ch = *RrBinaryChannel(0.5);
  Stream s(8);
  const int n = 200000;
  for (int x = 0; x < 2; ++x) {
    int ones = 0;
    for (int i = 0; i < n; ++i) ones += ch.SampleBit(x, s);
    const double want = ch.Probability(1, x);
    EXPECT_NEAR(static_cast<double>(ones) / n, want,
                3 * std::sqrt(want * (1 - want) / n));
  }
}

TEST(ChannelsTest, WithFlip) {
  const Channel ch = *RapporChannel(2, 1.0);
  const Channel other = *ch.WithFlip(0.1);
  EXPECT_EQ(other.flip(), 0.1);
  EXPECT_FALSE(ch.WithFlip(1.5).ok());
  EXPECT_FALSE(Channel::Tabular({{1.0}}, 1.0)->WithFlip(0.1).ok());
}

}  // namespace
}  // namespace ldpt
