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

#include "ldpt/index_set.h"

#include <algorithm>

namespace ldpt {

IndexSet IndexSet::FromMembers(int universe, std::span<const int> members) {
  IndexSet s = Empty(universe);
  for (int x : members) {
    if (x < 0 || x >= universe) continue;
    s.mask_[x >> 6] |= 1ULL << (x & 63);
  }
  for (int x = 0; x < universe; ++x) {
    if (s.Contains(x)) s.members_.push_back(x);
  }
  return s;
}

IndexSet IndexSet::Empty(int universe) {
  IndexSet s;
  s.universe_ = universe;
  s.mask_.assign((universe + 63) / 64, 0);
  return s;
}

IndexSet IndexSet::Full(int universe) {
  IndexSet s = Empty(universe);
  for (int x = 0; x < universe; ++x) {
    s.mask_[x >> 6] |= 1ULL << (x & 63);
    s.members_.push_back(x);
  }
  return s;
}

IndexSet IndexSet::Random(int universe, Stream& stream) {
  IndexSet s = Empty(universe);
  std::uint64_t word = 0;
  for (int x = 0; x < universe; ++x) {
    if ((x & 63) == 0) word = stream();
    if ((word >> (x & 63)) & 1ULL) {
      s.mask_[x >> 6] |= 1ULL << (x & 63);
      s.members_.push_back(x);
    }
  }
  return s;
}

IndexSet IndexSet::Restrict(int universe) const {
  return FromMembers(universe, members_);
}

}  // namespace ldpt
