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

#ifndef LDPT_CHANNELS_H_
#define LDPT_CHANNELS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/index_set.h"
#include "ldpt/random.h"

namespace ldpt {

// Channels whose output space has at most 2^20 messages can be certified by
// exhaustive enumeration.
inline constexpr int kMaxEnumerableWidth = 20;

// RAPPOR constants for privacy level rho: each bit of the one-hot encoding
// is flipped with probability flip = 1/(e^{rho/2}+1), so coordinate j of the
// output is Bernoulli(alpha p(j) + beta) when the input is drawn from p.
struct RapporParams {
  double rho = 0.0;
  double alpha = 0.0;  // (e^{rho/2}-1)/(e^{rho/2}+1)
  double beta = 0.0;   // 1/(e^{rho/2}+1)
  double flip = 0.0;

  static absl::StatusOr<RapporParams> FromRho(double rho);
};

// Flip probability 1/(e^rho+1) of binary randomized response.
double RrFlipProbability(double rho);

// A privatization channel W(y|x) with inputs {0..input_size-1}. Messages are
// bit strings of output_width bits; bit j of a message is bit j of the
// integer y passed to Probability(). Tabular channels instead emit one of
// num_outputs() symbols.
//
// Every channel carries both an exact evaluator (for certification and
// enumeration oracles) and a sampler (for Monte-Carlo runs).
class Channel {
 public:
  enum class Kind { kRappor, kMembership, kTabular };

  // k-RAPPOR with an explicit flip probability.
  static absl::StatusOr<Channel> Rappor(int k, double rho, double flip);
  // One output bit: 1{x in set} passed through randomized response with the
  // given flip probability. input_size is set.universe().
  static absl::StatusOr<Channel> Membership(IndexSet set, double rho,
                                            double flip);
  // Explicit conditional table w[x][y]; rows must each sum to 1.
  static absl::StatusOr<Channel> Tabular(std::vector<std::vector<double>> w,
                                         double rho);

  Kind kind() const { return kind_; }
  int input_size() const { return input_size_; }
  int output_width() const { return output_width_; }
  std::uint64_t num_outputs() const;
  double rho() const { return rho_; }
  double flip() const { return flip_; }
  bool enumerable() const { return output_width_ <= kMaxEnumerableWidth; }
  // Only meaningful for kMembership.
  const IndexSet& membership() const { return set_; }

  // Exact W(y|x).
  double Probability(std::uint64_t y, int x) const;

  // Writes the message for input x into `out`, which must hold
  // ceil(output_width/64) words.
  void Sample(int x, Stream& stream, std::span<std::uint64_t> out) const;

  // Single-bit channels only.
  bool SampleBit(int x, Stream& stream) const {
    return set_.Contains(x) != stream.Bernoulli(flip_);
  }

  // Copy with the flip probability replaced (RAPPOR and membership only).
  absl::StatusOr<Channel> WithFlip(double flip) const;

 private:
  Channel() = default;

  Kind kind_ = Kind::kTabular;
  int input_size_ = 0;
  int output_width_ = 0;
  double rho_ = 0.0;
  double flip_ = 0.0;
  IndexSet set_;
  std::vector<std::vector<double>> table_;
};

// k-RAPPOR at privacy level rho.
absl::StatusOr<Channel> RapporChannel(int k, double rho);

// One-bit Hadamard response for a player assigned column set `c` (a subset
// of {0..K-1}) whose sample lies in {0..k-1}: sends 1 with probability
// e^rho/(e^rho+1) if x is in c, else 1/(e^rho+1).
absl::StatusOr<Channel> HrBitChannel(const IndexSet& c, int k, double rho);

// Binary randomized response on {0, 1}.
absl::StatusOr<Channel> RrBinaryChannel(double rho);

// Randomized response applied to the indicator 1{x in s}; inputs are
// {0..s.universe()-1}.
absl::StatusOr<Channel> SubsetThenRr(const IndexSet& s, double rho);

// Exact max_{y,x,x'} W(y|x')/W(y|x). Returns +infinity when some message has
// zero probability under one input but not another. Fails with
// FailedPrecondition for sampling-only (non-enumerable) channels.
absl::StatusOr<double> LdpRatio(const Channel& channel);

// ratio <= e^rho within 1e-12 relative.
bool CertifiesLdp(double ratio, double rho);

}  // namespace ldpt

#endif  // LDPT_CHANNELS_H_
