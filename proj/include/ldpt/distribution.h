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

#ifndef LDPT_DISTRIBUTION_H_
#define LDPT_DISTRIBUTION_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/random.h"

namespace ldpt {

// Absolute tolerance on the total mass of a constructed distribution.
inline constexpr double kMassTolerance = 1e-12;
// Inputs whose mass is within this distance of 1 are renormalized; anything
// further off is rejected as a caller error.
inline constexpr double kRenormalizeWindow = 1e-9;

// A probability mass function over the finite domain {0, ..., k-1}.
// Immutable after construction.
class Distribution {
 public:
  static absl::StatusOr<Distribution> Create(std::vector<double> mass);
  static Distribution Uniform(int k);
  static Distribution PointMass(int k, int x);

  int k() const { return static_cast<int>(mass_.size()); }
  std::span<const double> mass() const { return mass_; }
  double operator[](int x) const { return mass_[x]; }

 private:
  explicit Distribution(std::vector<double> mass) : mass_(std::move(mass)) {}

  std::vector<double> mass_;
};

// A probability mass function over {0..k1-1} x {0..k2-1}, stored row-major
// (first coordinate is the row).
class JointDistribution {
 public:
  static absl::StatusOr<JointDistribution> Create(int k1, int k2,
                                                  std::vector<double> mass);
  static JointDistribution Uniform(int k1, int k2);

  int k1() const { return k1_; }
  int k2() const { return k2_; }
  double at(int row, int col) const { return mass_[row * k2_ + col]; }
  std::span<const double> mass() const { return mass_; }

  // The same masses viewed as a distribution over {0..k1*k2-1}, with
  // (row, col) mapped to row * k2 + col.
  Distribution Flatten() const;

 private:
  JointDistribution(int k1, int k2, std::vector<double> mass)
      : k1_(k1), k2_(k2), mass_(std::move(mass)) {}

  int k1_;
  int k2_;
  std::vector<double> mass_;
};

// A vector of +/-1 signs indexing a Paninski perturbation.
class SignPattern {
 public:
  static absl::StatusOr<SignPattern> Create(std::vector<int> signs);
  static SignPattern AllPlus(int length);
  static SignPattern Random(int length, Stream& stream);

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[i]; }
  std::span<const int> signs() const { return signs_; }

 private:
  explicit SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {}

  std::vector<int> signs_;
};

// Half the l1 distance. Errors on a domain-size mismatch.
absl::StatusOr<double> TvDistance(const Distribution& p, const Distribution& q);
absl::StatusOr<double> TvDistance(const JointDistribution& p,
                                  const JointDistribution& q);

// Squared l2 distance.
absl::StatusOr<double> L2DistanceSq(const Distribution& p,
                                    const Distribution& q);

JointDistribution Product(const Distribution& p1, const Distribution& p2);

// Row and column sums.
std::pair<Distribution, Distribution> Marginals(const JointDistribution& p);

// Inverse-CDF sampler over a cumulative table; O(log k) per draw.
class Sampler {
 public:
  explicit Sampler(const Distribution& p);

  int Draw(Stream& stream) const;
  std::vector<int> Draw(std::size_t n, Stream& stream) const;

 private:
  std::vector<double> cumulative_;
};

// n i.i.d. draws from p.
std::vector<int> Sample(const Distribution& p, std::size_t n, Stream& stream);

// The Paninski perturbation of the uniform distribution on {0..k_sq-1}:
// masses (1 - 2 gamma z_i)/k_sq and (1 + 2 gamma z_i)/k_sq on the pair
// (2i, 2i+1). Every member sits at total variation exactly gamma from
// uniform.
absl::StatusOr<Distribution> Paninski(int k_sq, double gamma,
                                      const SignPattern& z);

}  // namespace ldpt

#endif  // LDPT_DISTRIBUTION_H_
