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

#include "ldpt/distribution.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpt {
namespace {

absl::Status ValidateMass(std::vector<double>& mass) {
  if (mass.empty()) {
    return absl::InvalidArgumentError("distribution must have k >= 1");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < mass.size(); ++x) {
    if (!std::isfinite(mass[x]) || mass[x] < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("mass[", x, "] = ", mass[x], " is not a probability"));
    }
    total += mass[x];
  }
  if (std::abs(total - 1.0) > kRenormalizeWindow) {
    return absl::InvalidArgumentError(
        absl::StrCat("masses sum to ", total, ", not 1"));
  }
  for (double& m : mass) m /= total;
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Distribution> Distribution::Create(std::vector<double> mass) {
  if (absl::Status s = ValidateMass(mass); !s.ok()) return s;
  return Distribution(std::move(mass));
}

Distribution Distribution::Uniform(int k) {
  return Distribution(std::vector<double>(k, 1.0 / k));
}

Distribution Distribution::PointMass(int k, int x) {
  std::vector<double> mass(k, 0.0);
  mass[x] = 1.0;
  return Distribution(std::move(mass));
}

absl::StatusOr<JointDistribution> JointDistribution::Create(
    int k1, int k2, std::vector<double> mass) {
  if (k1 < 1 || k2 < 1 ||
      mass.size() != static_cast<std::size_t>(k1) * static_cast<std::size_t>(k2)) {
    return absl::InvalidArgumentError(
        absl::StrCat("joint mass has ", mass.size(), " cells, expected ", k1,
                     " x ", k2));
  }
  if (absl::Status s = ValidateMass(mass); !s.ok()) return s;
  return JointDistribution(k1, k2, std::move(mass));
}

JointDistribution JointDistribution::Uniform(int k1, int k2) {
  return JointDistribution(
      k1, k2, std::vector<double>(static_cast<std::size_t>(k1) * k2,
                                  1.0 / (static_cast<double>(k1) * k2)));
}

Distribution JointDistribution::Flatten() const {
  return *Distribution::Create(mass_);
}

absl::StatusOr<SignPattern> SignPattern::Create(std::vector<int> signs) {
  for (int s : signs) {
    if (s != 1 && s != -1) {
      return absl::InvalidArgumentError("sign pattern entries must be +1/-1");
    }
  }
  return SignPattern(std::move(signs));
}

SignPattern SignPattern::AllPlus(int length) {
  return SignPattern(std::vector<int>(length, 1));
}

SignPattern SignPattern::Random(int length, Stream& stream) {
  std::vector<int> signs(length);
  for (int& s : signs) s = (stream() >> 63) ? 1 : -1;
  return SignPattern(std::move(signs));
}

absl::StatusOr<double> TvDistance(const Distribution& p,
                                  const Distribution& q) {
  if (p.k() != q.k()) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain sizes differ: ", p.k(), " vs ", q.k()));
  }
  double l1 = 0.0;
  for (int x = 0; x < p.k(); ++x) l1 += std::abs(p[x] - q[x]);
  return 0.5 * l1;
}

absl::StatusOr<double> TvDistance(const JointDistribution& p,
                                  const JointDistribution& q) {
  if (p.k1() != q.k1() || p.k2() != q.k2()) {
    return absl::InvalidArgumentError("joint domain shapes differ");
  }
  return TvDistance(p.Flatten(), q.Flatten());
}

absl::StatusOr<double> L2DistanceSq(const Distribution& p,
                                    const Distribution& q) {
  if (p.k() != q.k()) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain sizes differ: ", p.k(), " vs ", q.k()));
  }
  double sum = 0.0;
  for (int x = 0; x < p.k(); ++x) sum += (p[x] - q[x]) * (p[x] - q[x]);
  return sum;
}

JointDistribution Product(const Distribution& p1, const Distribution& p2) {
  std::vector<double> mass;
  mass.reserve(static_cast<std::size_t>(p1.k()) * p2.k());
  for (int i = 0; i < p1.k(); ++i) {
    for (int j = 0; j < p2.k(); ++j) mass.push_back(p1[i] * p2[j]);
  }
  return *JointDistribution::Create(p1.k(), p2.k(), std::move(mass));
}

std::pair<Distribution, Distribution> Marginals(const JointDistribution& p) {
  std::vector<double> rows(p.k1(), 0.0);
  std::vector<double> cols(p.k2(), 0.0);
  for (int i = 0; i < p.k1(); ++i) {
    for (int j = 0; j < p.k2(); ++j) {
      rows[i] += p.at(i, j);
      cols[j] += p.at(i, j);
    }
  }
  return {*Distribution::Create(std::move(rows)),
          *Distribution::Create(std::move(cols))};
}

Sampler::Sampler(const Distribution& p) : cumulative_(p.k()) {
  std::partial_sum(p.mass().begin(), p.mass().end(), cumulative_.begin());
}

int Sampler::Draw(Stream& stream) const {
  const double u = stream.Uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<int>(it - cumulative_.begin());
}

std::vector<int> Sampler::Draw(std::size_t n, Stream& stream) const {
  std::vector<int> out(n);
  for (int& x : out) x = Draw(stream);
  return out;
}

std::vector<int> Sample(const Distribution& p, std::size_t n, Stream& stream) {
  return Sampler(p).Draw(n, stream);
}

absl::StatusOr<Distribution> Paninski(int k_sq, double gamma,
                                      const SignPattern& z) {
  if (k_sq < 2 || k_sq % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Paninski domain size must be even, got ", k_sq));
  }
  if (!(gamma >= 0.0 && gamma <= 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in [0, 1/2], got ", gamma));
  }
  if (z.size() != k_sq / 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sign pattern has length ", z.size(), ", expected ", k_sq / 2));
  }
  std::vector<double> mass(k_sq);
  for (int i = 0; i < k_sq / 2; ++i) {
    mass[2 * i] = (1.0 - 2.0 * gamma * z[i]) / k_sq;
    mass[2 * i + 1] = (1.0 + 2.0 * gamma * z[i]) / k_sq;
  }
  return Distribution::Create(std::move(mass));
}

}  // namespace ldpt
