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

#ifndef LDPT_RANDOM_H_
#define LDPT_RANDOM_H_

#include <cstdint>
#include <limits>

namespace ldpt {

// Mixes a 64-bit value through the SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Derives an independent 64-bit seed from (seed, index). Used to hand out
// per-player, per-trial and per-subprotocol seeds from one master seed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

// A counter-based random stream. The i-th draw is a pure function of
// (key, i), so a stream can be recreated anywhere from its key and children
// can be split off without touching shared state. Satisfies
// UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key) : key_(key) {}

  // stream(master_seed, index): the derived stream used for player/trial
  // `index` under `master_seed`.
  static Stream Derive(std::uint64_t master_seed, std::uint64_t index) {
    return Stream(DeriveSeed(master_seed, index));
  }

  // Child stream keyed by (this key, index). Does not advance this stream.
  Stream Split(std::uint64_t index) const { return Derive(key_, index); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return Mix64(key_ + counter_ * kGamma);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ldpt

#endif  // LDPT_RANDOM_H_
