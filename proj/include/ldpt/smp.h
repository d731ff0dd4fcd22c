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

#ifndef LDPT_SMP_H_
#define LDPT_SMP_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/channels.h"
#include "ldpt/random.h"

namespace ldpt {

// Shared randomness V, visible to every player and to the referee.
struct PublicSeed {
  std::uint64_t value = 0;

  // The shared stream; identical for everyone holding the same seed.
  Stream stream() const { return Stream::Derive(value, kSharedTag); }

  friend bool operator==(const PublicSeed&, const PublicSeed&) = default;

  static constexpr std::uint64_t kSharedTag = 0x5eedULL;
};

// One fixed-width bit string per player, packed into 64-bit words.
class MessageMatrix {
 public:
  MessageMatrix() = default;
  MessageMatrix(std::size_t rows, int width)
      : rows_(rows),
        width_(width),
        words_((width + 63) / 64),
        data_(rows * static_cast<std::size_t>(words_), 0) {}

  std::size_t rows() const { return rows_; }
  int width() const { return width_; }
  int words_per_row() const { return words_; }

  std::span<std::uint64_t> row(std::size_t i) {
    return {data_.data() + i * words_, static_cast<std::size_t>(words_)};
  }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {data_.data() + i * words_, static_cast<std::size_t>(words_)};
  }
  bool bit(std::size_t i, int j) const {
    return (data_[i * words_ + (j >> 6)] >> (j & 63)) & 1ULL;
  }

  friend bool operator==(const MessageMatrix&, const MessageMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  int width_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> data_;
};

// Which channel each player applies. channel_of[i] indexes `channels`, or is
// kSilent for a player that sends nothing (its message row stays zero).
struct ChannelAssignment {
  static constexpr std::uint32_t kSilent =
      std::numeric_limits<std::uint32_t>::max();

  std::vector<Channel> channels;
  std::vector<std::uint32_t> channel_of;

  // Every one of n players uses `channel`.
  static ChannelAssignment Uniform(Channel channel, std::size_t n);
};

// Contiguous equal-size groups [g*group_size, (g+1)*group_size); players past
// groups*group_size are dropped.
struct GroupPartition {
  int groups = 0;
  std::size_t group_size = 0;
  std::size_t dropped = 0;
  std::vector<int> group_of;  // -1 for dropped players

  std::size_t begin(int g) const { return g * group_size; }
  std::size_t end(int g) const { return (g + 1) * group_size; }
};

absl::StatusOr<GroupPartition> PartitionPlayers(std::size_t n, int groups);

// Contiguous groups with the given sizes, in order.
absl::StatusOr<GroupPartition> PartitionPlayers(
    std::size_t n, std::span<const std::size_t> sizes);

struct Transcript {
  MessageMatrix messages;
  std::optional<PublicSeed> public_seed;
  std::vector<int> group_of;
  std::size_t dropped = 0;
};

// Player i computes Y_i = W_i(X_i) with private stream
// Stream::Derive(master_seed, i).
absl::StatusOr<Transcript> RunPrivateCoin(const ChannelAssignment& assignment,
                                          std::span<const int> samples,
                                          std::uint64_t master_seed);

using ProtocolSetup =
    std::function<absl::StatusOr<ChannelAssignment>(const PublicSeed&)>;

// The channel assignment is setup(public_seed); messages are then produced
// exactly as in the private-coin run.
absl::StatusOr<Transcript> RunPublicCoin(const ProtocolSetup& setup,
                                         std::span<const int> samples,
                                         const PublicSeed& public_seed,
                                         std::uint64_t master_seed);

// Number of ones sent by players [begin, end) of a one-bit transcript.
std::size_t CountOnes(const MessageMatrix& messages, std::size_t begin,
                      std::size_t end);

}  // namespace ldpt

#endif  // LDPT_SMP_H_
