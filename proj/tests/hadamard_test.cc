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

#include <vector>

#include "gtest/gtest.h"
#include "ldpt/distribution.h"
#include "ldpt/oracles.h"

namespace ldpt {
namespace {

TEST(HadamardTest, SylvesterSmallOrders) {
  const SignMatrix h1 = *Sylvester(1);
  EXPECT_EQ(h1(0, 0), 1);
  const SignMatrix h2 = *Sylvester(2);
  EXPECT_EQ(h2(0, 0), 1);
  EXPECT_EQ(h2(0, 1), 1);
  EXPECT_EQ(h2(1, 0), 1);
  EXPECT_EQ(h2(1, 1), -1);
  EXPECT_FALSE(Sylvester(3).ok());
  EXPECT_FALSE(Sylvester(0).ok());
}

TEST(HadamardTest, OrderFourIsOrthogonal) {
  const SignMatrix h = *Sylvester(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      int dot = 0;
      for (int i = 0; i < 4; ++i) dot += h(i, a) * h(i, b);
      EXPECT_EQ(dot, a == b ? 4 : 0);
    }
  }
  for (int order = 1; order <= 1024; order *= 2) {
    EXPECT_TRUE(oracle::SylvesterOrthogonal(order)) << order;
  }
}

TEST(HadamardTest, ColumnSetExamples) {
  const HadamardSpec one = ColumnSets(1);
  EXPECT_EQ(one.order, 2);
  EXPECT_EQ(one.column_sets[0].size(), 2);
  EXPECT_EQ(one.column_sets[1].size(), 1);
  EXPECT_TRUE(one.column_sets[1].Contains(0));
  EXPECT_EQ(HadamardOrder(3), 4);
  EXPECT_EQ(HadamardOrder(4), 8);
  for (int k = 1; k <= 40; ++k) {
    const HadamardSpec spec = ColumnSets(k);
    EXPECT_GT(spec.order, k);
    EXPECT_LE(spec.order, 2 * k + 1);
    EXPECT_EQ(spec.column_sets[0].size(), spec.order);
    for (int j = 1; j < spec.order; ++j) {
      EXPECT_EQ(spec.column_sets[j].size(), spec.order / 2);
    }
  }
}

TEST(HadamardTest, SubsetMassExamples) {
  const Distribution p = *Distribution::Create({0.2, 0.3, 0.5});
  const int a[] = {0, 2};
  EXPECT_DOUBLE_EQ(SubsetMass(p, IndexSet::FromMembers(3, a)), 0.7);
  EXPECT_EQ(SubsetMass(p, IndexSet::Empty(4)), 0.0);
  const int b[] = {0, 3};
  EXPECT_DOUBLE_EQ(SubsetMass(p, IndexSet::FromMembers(4, b)), 0.2);
}

TEST(HadamardTest, WalshHadamardMatchesMatrix) {
  std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<double> in = v;
  WalshHadamardTransform(v);
  const SignMatrix h = *Sylvester(8);
  for (int i = 0; i < 8; ++i) {
    double want = 0.0;
    for (int j = 0; j < 8; ++j) want += h(i, j) * in[j];
    EXPECT_DOUBLE_EQ(v[i], want);
  }
}

TEST(HadamardTest, ParsevalIdentity) {
  Stream s(21);
  for (int k : {2, 3, 5, 8, 16, 33}) {
    for (int t = 0; t < 200; ++t) {
      const auto [lhs, rhs] =
          oracle::ParsevalSides(oracle::RandomDistribution(k, s),
                                oracle::RandomDistribution(k, s));
      EXPECT_NEAR(lhs, rhs, 1e-10);
    }
  }
}

}  // namespace
}  // namespace ldpt
