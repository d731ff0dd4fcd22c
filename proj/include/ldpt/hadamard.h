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

#ifndef LDPT_HADAMARD_H_
#define LDPT_HADAMARD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/distribution.h"
#include "ldpt/index_set.h"

namespace ldpt {

// A dense +/-1 matrix.
class SignMatrix {
 public:
  SignMatrix(int order, std::vector<std::int8_t> entries)
      : order_(order), entries_(std::move(entries)) {}

  int order() const { return order_; }
  int operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * order_ + col];
  }

 private:
  int order_;
  std::vector<std::int8_t> entries_;
};

// Sylvester's construction: H(1) = [1], H(2m) = [[H(m), H(m)], [H(m), -H(m)]].
// Errors unless `order` is a power of two.
absl::StatusOr<SignMatrix> Sylvester(int order);

// Hadamard response layout for a source domain of size k: K is the smallest
// power of two strictly larger than k, and column_sets[j] holds the rows i
// (0-based) with H(i, j) = +1. column_sets[0] is all of {0..K-1}; every
// other set has K/2 elements.
struct HadamardSpec {
  int k = 0;
  int order = 0;
  std::vector<IndexSet> column_sets;
};

HadamardSpec ColumnSets(int k);

// The smallest power of two strictly larger than k.
int HadamardOrder(int k);

// p(C): mass p assigns to C. Elements of C at or beyond p.k() are padding
// and contribute 0.
double SubsetMass(const Distribution& p, const IndexSet& c);

// In-place unnormalized fast Walsh-Hadamard transform: v <- H v for the
// Sylvester matrix H of order v.size(), which must be a power of two.
void WalshHadamardTransform(std::span<double> v);

}  // namespace ldpt

#endif  // LDPT_HADAMARD_H_
