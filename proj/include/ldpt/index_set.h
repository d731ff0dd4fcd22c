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

#ifndef LDPT_INDEX_SET_H_
#define LDPT_INDEX_SET_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ldpt/random.h"

namespace ldpt {

// A subset of {0, ..., universe-1}, kept both as a sorted member list and as
// a bitmask so membership is O(1).
class IndexSet {
 public:
  IndexSet() = default;

  // Members outside the universe are ignored; duplicates collapse.
  static IndexSet FromMembers(int universe, std::span<const int> members);
  static IndexSet Empty(int universe);
  static IndexSet Full(int universe);
  // Each element included independently with probability 1/2, i.e. a
  // uniformly random subset.
  static IndexSet Random(int universe, Stream& stream);

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool Contains(int x) const {
    return x >= 0 && x < universe_ && ((mask_[x >> 6] >> (x & 63)) & 1ULL);
  }
  std::span<const int> members() const { return members_; }

  // Same members viewed inside a different universe; members beyond the new
  // universe are dropped.
  IndexSet Restrict(int universe) const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.universe_ == b.universe_ && a.members_ == b.members_;
  }

 private:
  int universe_ = 0;
  std::vector<int> members_;
  std::vector<std::uint64_t> mask_;
};

}  // namespace ldpt

#endif  // LDPT_INDEX_SET_H_
