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

#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpt/status_macros.h"

namespace ldpt {

ChannelAssignment ChannelAssignment::Uniform(Channel channel, std::size_t n) {
  ChannelAssignment a;
  a.channels.push_back(std::move(channel));
  a.channel_of.assign(n, 0);
  return a;
}

absl::StatusOr<GroupPartition> PartitionPlayers(std::size_t n, int groups) {
  if (groups < 1) {
    return absl::InvalidArgumentError("need at least one group");
  }
  if (static_cast<std::size_t>(groups) > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot split ", n, " players into ", groups, " non-empty groups"));
  }
  GroupPartition part;
  part.groups = groups;
  part.group_size = n / groups;
  part.dropped = n - part.group_size * groups;
  part.group_of.assign(n, -1);
  for (std::size_t i = 0; i < n - part.dropped; ++i) {
    part.group_of[i] = static_cast<int>(i / part.group_size);
  }
  return part;
}

absl::StatusOr<GroupPartition> PartitionPlayers(
    std::size_t n, std::span<const std::size_t> sizes) {
  if (sizes.empty()) {
    return absl::InvalidArgumentError("need at least one group");
  }
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(),
                                            std::size_t{0});
  if (total > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "groups need ", total, " players but only ", n, " are available"));
  }
  GroupPartition part;
  part.groups = static_cast<int>(sizes.size());
  part.group_size = sizes[0];
  part.dropped = n - total;
  part.group_of.assign(n, -1);
  std::size_t i = 0;
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    for (std::size_t j = 0; j < sizes[g]; ++j) part.group_of[i++] = g;
  }
  return part;
}

absl::StatusOr<Transcript> RunPrivateCoin(const ChannelAssignment& assignment,
                                          std::span<const int> samples,
                                          std::uint64_t master_seed) {
  const std::size_t n = samples.size();
  if (assignment.channel_of.size() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("channel assignment covers ", assignment.channel_of.size(),
                     " players but there are ", n, " samples"));
  }
  int width = 0;
  for (const Channel& ch : assignment.channels) {
    if (width != 0 && ch.output_width() != width) {
      return absl::InvalidArgumentError("channels disagree on message width");
    }
    width = ch.output_width();
  }
  Transcript t;
  t.messages = MessageMatrix(n, width);
  t.group_of.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t c = assignment.channel_of[i];
    if (c == ChannelAssignment::kSilent) {
      t.group_of[i] = -1;
      ++t.dropped;
      continue;
    }
    if (c >= assignment.channels.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("player ", i, " has unknown channel ", c));
    }
    const Channel& ch = assignment.channels[c];
    const int x = samples[i];
    if (x < 0 || x >= ch.input_size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sample ", x, " of player ", i, " is outside the channel input"));
    }
    t.group_of[i] = static_cast<int>(c);
    Stream stream = Stream::Derive(master_seed, i);
    ch.Sample(x, stream, t.messages.row(i));
  }
  return t;
}

absl::StatusOr<Transcript> RunPublicCoin(const ProtocolSetup& setup,
                                         std::span<const int> samples,
                                         const PublicSeed& public_seed,
                                         std::uint64_t master_seed) {
  ASSIGN_OR_RETURN(ChannelAssignment assignment, setup(public_seed));
  ASSIGN_OR_RETURN(Transcript t,
                   RunPrivateCoin(assignment, samples, master_seed));
  t.public_seed = public_seed;
  return t;
}

std::size_t CountOnes(const MessageMatrix& messages, std::size_t begin,
                      std::size_t end) {
  std::size_t ones = 0;
  for (std::size_t i = begin; i < end; ++i) ones += messages.row(i)[0] & 1ULL;
  return ones;
}

}  // namespace ldpt
