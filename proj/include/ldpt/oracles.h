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

#ifndef LDPT_ORACLES_H_
#define LDPT_ORACLES_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ldpt/channels.h"
#include "ldpt/distribution.h"
#include "ldpt/random.h"

// Exact small-instance computations the library is checked against. Nothing
// here samples unless the name says so.
namespace ldpt::oracle {

// Dirichlet(1, ..., 1) draw.
Distribution RandomDistribution(int k, Stream& stream);
JointDistribution RandomJoint(int k1, int k2, Stream& stream);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// E[T] and Var[T] of the RAPPOR statistic by enumerating every input tuple
// in [k]^n and every message tuple, with messages weighted by
// channel.Probability and T evaluated with `params`.
Moments ExactRapporMoments(const Distribution& p, const Distribution& q,
                           int n, const RapporParams& params,
                           const Channel& channel);

// n(n-1) alpha^2 ||p-q||^2.
double RapporMeanClosedForm(const Distribution& p, const Distribution& q,
                            int n, double alpha);

// 2 k n^2 + 5 n^3 alpha^2 ||p-q||^2.
double RapporVarianceBound(int k, int n, double alpha, double l2_sq);

// Largest deviation between the enumerated joint law of RAPPOR coordinates
// and the closed forms: P(Y_ix=1, Y_jy=1) = (a p(x)+b)(a p(y)+b) for i != j;
// b^2 + a b (p(x)+p(y)) for i = j, x != y; a p(x) + b for i = j, x = y.
double JointLawMaxError(const Distribution& p, const RapporParams& params,
                     const Channel& channel);

// Returns {sum_j (p(C_j)-q(C_j))^2, (K/4) ||p-q||^2}.
std::array<double, 2> ParsevalSides(const Distribution& p,
                                    const Distribution& q);

// Checks H^T H = order * I for the Sylvester matrix.
bool SylvesterOrthogonal(int order);

// Fraction of the 2^k subsets S with (p(S)-q(S))^2 > eps^2/(2k).
double SubsetPerturbationFraction(const Distribution& p, const Distribution& q,
                                  double eps);

// delta(i, j) = p(i, j) - p1(i) p2(j), row-major.
std::vector<double> DeviationMatrix(const JointDistribution& p);

// Half the l1 distance between p and the product of its marginals.
double TvToMarginalProduct(const JointDistribution& p);

// Fraction of the 4^k pairs (S1, S2) with
// (p(S1 x S2) - p1(S1) p2(S2))^2 >= eps^2/(8k).
double ProductSubsetPerturbationFraction(const JointDistribution& p,
                                         double eps);

// Moments of Z = sum_ij delta_ij X_i Y_j for X, Y uniform on {0,1}^k,
// by enumeration of all 4^k pairs.
struct ZMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  double frobenius_sq = 0.0;
  double tail = 0.0;  // Pr[Z^2 >= alpha ||delta||_F^2]
};
ZMoments ExactZMoments(std::span<const double> delta, int k, double alpha);

// Max |row sum|, |column sum| of a k x k matrix.
double MaxLineSum(std::span<const double> delta, int k);

// Bits X_i = low bit of a0 + a1 t_i + a2 t_i^2 + a3 t_i^3 over GF(8)
// (modulus x^3 + x + 1) at distinct points t_i, i < k <= 8, one member per
// coefficient vector: 4096 equally likely members.
std::vector<std::uint8_t> FourWiseFamily(int k);

// E[X_a X_b X_c X_d] as a k^4 tensor, over the family above or over fully
// independent fair bits.
std::vector<double> FourWiseTensor(int k);
std::vector<double> IndependentTensor(int k);

// E[Z], E[Z^2], E[Z^4] computed by contracting delta against a 4th-order
// moment tensor of X (Y is an independent copy).
std::array<double, 3> ZMomentsFromTensor(std::span<const double> delta, int k,
                                         std::span<const double> tensor);

}  // namespace ldpt::oracle

#endif  // LDPT_ORACLES_H_
