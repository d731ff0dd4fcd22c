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

#include "ldpt/smp.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "ldpt/channels.h"

namespace ldpt {
namespace {

TEST(SmpTest, PartitionExamples) {
  const GroupPartition a = *PartitionPlayers(10, 3);
  EXPECT_EQ(a.group_size, 3u);
  EXPECT_EQ(a.dropped, 1u);
  EXPECT_EQ(a.group_of[9], -1);
  EXPECT_EQ(a.group_of[4], 1);
  const GroupPartition b = *PartitionPlayers(8, 4);
  EXPECT_EQ(b.group_size, 2u);
  EXPECT_EQ(b.dropped, 0u);
  EXPECT_FALSE(PartitionPlayers(5, 8).ok());
  EXPECT_FALSE(PartitionPlayers(5, 0).ok());
}

TEST(SmpTest, PrivateCoinMeanAndDeterminism) {
  const int n = 100000;
  const ChannelAssignment a = ChannelAssignment::Uniform(*RrBinaryChannel(1.0), n);
  const std::vector<int> samples(n, 0);
  const Transcript t = *RunPrivateCoin(a, samples, 5);
  EXPECT_FALSE(t.public_seed.has_value());
  ASSERT_EQ(t.messages.rows(), static_cast<std::size_t>(n));
  const double want = 1.0 / (std::exp(1.0) + 1.0);
  const double mean = static_cast<double>(CountOnes(t.messages, 0, n)) / n;
  EXPECT_NEAR(mean, want, 3 * std::sqrt(want * (1 - want) / n));
  EXPECT_EQ(RunPrivateCoin(a, samples, 5)->messages, t.messages);
}

TEST(SmpTest, EmptyRunAndMismatch) {
  const ChannelAssignment none = ChannelAssignment::Uniform(*RrBinaryChannel(1.0), 0);
  const Transcript t = *RunPrivateCoin(none, {}, 1);
  EXPECT_EQ(t.messages.rows(), 0u);
  const std::vector<int> one = {0};
  EXPECT_FALSE(RunPrivateCoin(none, one, 1).ok());
  const ChannelAssignment two = ChannelAssignment::Uniform(*RrBinaryChannel(1.0), 1);
  const std::vector<int> bad = {2};
  EXPECT_FALSE(RunPrivateCoin(two, bad, 1).ok());
}

ProtocolSetup SubsetSetup(int k, int players) {
  return [k, players](const PublicSeed& seed) -> absl::StatusOr<ChannelAssignment> {
    Stream shared = seed.stream();
    return ChannelAssignment::Uniform(
        *SubsetThenRr(IndexSet::Random(k, shared), 1.0), players);
  };
}

TEST(SmpTest, PublicCoinDeterminism) {
  const std::vector<int> samples = {0, 1, 2, 3, 4, 5};
  const ProtocolSetup setup = SubsetSetup(16, 6);
  const Transcript a = *RunPublicCoin(setup, samples, PublicSeed{1}, 9);
  const Transcript b = *RunPublicCoin(setup, samples, PublicSeed{1}, 9);
  EXPECT_EQ(a.messages, b.messages);
  ASSERT_TRUE(a.public_seed.has_value());
  EXPECT_EQ(a.public_seed->value, 1u);
}

TEST(SmpTest, PublicSeedChangesAssignment) {
  int differing = 0;
  for (std::uint64_t v = 0; v < 200; ++v) {
    Stream a = PublicSeed{v}.stream();
    Stream b = PublicSeed{v + 1000}.stream();
    differing += !(IndexSet::Random(16, a) == IndexSet::Random(16, b));
  }
  EXPECT_GE(differing, 199);
}

TEST(SmpTest, ConstantSetupMatchesPrivateCoin) {
  const std::vector<int> samples = {0, 1, 1, 0, 1};
  const Channel ch = *RrBinaryChannel(0.7);
  const ProtocolSetup setup = [&](const PublicSeed&) {
    return absl::StatusOr<ChannelAssignment>(ChannelAssignment::Uniform(ch, 5));
  };
  const Transcript pub = *RunPublicCoin(setup, samples, PublicSeed{3}, 4);
  const Transcript priv =
      *RunPrivateCoin(ChannelAssignment::Uniform(ch, 5), samples, 4);
  EXPECT_EQ(pub.messages, priv.messages);
}

TEST(SmpTest, ConditionalIndependenceGivenSeed) {
  const int trials = 100000;
  const std::vector<int> samples = {1, 2};
  const ProtocolSetup setup = SubsetSetup(4, 2);
  double table[2][2] = {{0, 0}, {0, 0}};
  for (int t = 0; t < trials; ++t) {
    const Transcript tr = *RunPublicCoin(setup, samples, PublicSeed{7}, t);
    ++table[tr.messages.bit(0, 0)][tr.messages.bit(1, 0)];
  }
  const double r0 = table[0][0] + table[0][1];
  const double c0 = table[0][0] + table[1][0];
  double chi2 = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double e = (a == 0 ? r0 : trials - r0) *
                       (b == 0 ? c0 : trials - c0) / trials;
      chi2 += (table[a][b] - e) * (table[a][b] - e) / e;
    }
  }
  EXPECT_LT(chi2, 9.0);
}

}  // namespace
}  // namespace ldpt
