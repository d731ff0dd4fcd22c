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

#include "ldpt/oracles.h"

#include <cmath>

#include "ldpt/hadamard.h"

namespace ldpt::oracle {
namespace {

double L2Sq(const Distribution& p, const Distribution& q) {
  double s = 0.0;
  for (int x = 0; x < p.k(); ++x) s += (p[x] - q[x]) * (p[x] - q[x]);
  return s;
}

int GfMul(int a, int b) {
  int r = 0;
  for (int i = 0; i < 3; ++i) {
    if ((b >> i) & 1) r ^= a << i;
  }
  for (int i = 4; i >= 3; --i) {
    if ((r >> i) & 1) r ^= 0b1011 << (i - 3);
  }
  return r;
}

// Contracts mode `mode` of a k^4 tensor with delta: out[..i..] =
// sum_j delta(i, j) in[..j..].
std::vector<double> ModeProduct(const std::vector<double>& in,
                                std::span<const double> delta, int k,
                                int mode) {
  std::vector<double> out(in.size(), 0.0);
  int stride = 1;
  for (int m = 3; m > mode; --m) stride *= k;
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const int j = static_cast<int>(idx / stride) % k;
    const std::size_t base = idx - static_cast<std::size_t>(j) * stride;
    for (int i = 0; i < k; ++i) {
      out[base + static_cast<std::size_t>(i) * stride] +=
          delta[i * k + j] * in[idx];
    }
  }
  return out;
}

}  // namespace

Distribution RandomDistribution(int k, Stream& stream) {
  std::vector<double> w(k);
  double total = 0.0;
  for (double& v : w) {
    v = -std::log(1.0 - stream.Uniform());
    total += v;
  }
  for (double& v : w) v /= total;
  return *Distribution::Create(std::move(w));
}

JointDistribution RandomJoint(int k1, int k2, Stream& stream) {
  const Distribution flat = RandomDistribution(k1 * k2, stream);
  return *JointDistribution::Create(
      k1, k2, std::vector<double>(flat.mass().begin(), flat.mass().end()));
}

Moments ExactRapporMoments(const Distribution& p, const Distribution& q,
                           int n, const RapporParams& params,
                           const Channel& channel) {
  const int k = p.k();
  const std::uint64_t outputs = channel.num_outputs();
  std::uint64_t input_tuples = 1;
  std::uint64_t output_tuples = 1;
  for (int i = 0; i < n; ++i) {
    input_tuples *= k;
    output_tuples *= outputs;
  }
  std::vector<int> xs(n);
  std::vector<std::uint64_t> ys(n);
  std::vector<std::int64_t> counts(k);
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::uint64_t xi = 0; xi < input_tuples; ++xi) {
    double px = 1.0;
    std::uint64_t rest = xi;
    for (int i = 0; i < n; ++i) {
      xs[i] = static_cast<int>(rest % k);
      rest /= k;
      px *= p[xs[i]];
    }
    if (px == 0.0) continue;
    for (std::uint64_t yi = 0; yi < output_tuples; ++yi) {
      double w = px;
      std::fill(counts.begin(), counts.end(), 0);
      std::uint64_t r = yi;
      for (int i = 0; i < n; ++i) {
        ys[i] = r % outputs;
        r /= outputs;
        w *= channel.Probability(ys[i], xs[i]);
        for (int x = 0; x < k; ++x) counts[x] += (ys[i] >> x) & 1ULL;
      }
      double t = 0.0;
      for (int x = 0; x < k; ++x) {
        const double lambda = params.alpha * q[x] + params.beta;
        const double nx = static_cast<double>(counts[x]);
        const double d = nx - (n - 1) * lambda;
        t += d * d - nx + (n - 1) * lambda * lambda;
      }
      m1 += w * t;
      m2 += w * t * t;
    }
  }
  return {m1, m2 - m1 * m1};
}

double RapporMeanClosedForm(const Distribution& p, const Distribution& q,
                            int n, double alpha) {
  return n * (n - 1.0) * alpha * alpha * L2Sq(p, q);
}

double RapporVarianceBound(int k, int n, double alpha, double l2_sq) {
  const double nn = n;
  return 2.0 * k * nn * nn + 5.0 * nn * nn * nn * alpha * alpha * l2_sq;
}

double JointLawMaxError(const Distribution& p, const RapporParams& params,
                     const Channel& channel) {
  const int k = p.k();
  const std::uint64_t outputs = channel.num_outputs();
  // Output law of one player: P(Y = y) = sum_x p(x) W(y|x).
  std::vector<double> law(outputs, 0.0);
  for (std::uint64_t y = 0; y < outputs; ++y) {
    for (int x = 0; x < k; ++x) law[y] += p[x] * channel.Probability(y, x);
  }
  const double a = params.alpha;
  const double b = params.beta;
  double worst = 0.0;
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      double same = 0.0;
      double px = 0.0;
      double py = 0.0;
      for (std::uint64_t u = 0; u < outputs; ++u) {
        const bool bx = (u >> x) & 1ULL;
        const bool by = (u >> y) & 1ULL;
        if (bx && by) same += law[u];
        if (bx) px += law[u];
        if (by) py += law[u];
      }
      // Two distinct players: enumerate the pair of messages.
      double cross = 0.0;
      for (std::uint64_t u = 0; u < outputs; ++u) {
        if (!((u >> x) & 1ULL)) continue;
        for (std::uint64_t v = 0; v < outputs; ++v) {
          if ((v >> y) & 1ULL) cross += law[u] * law[v];
        }
      }
      const double lx = a * p[x] + b;
      const double ly = a * p[y] + b;
      worst = std::max(worst, std::abs(cross - lx * ly));
      const double expected =
          x == y ? lx : b * b + a * b * (p[x] + p[y]);
      worst = std::max(worst, std::abs(same - expected));
      worst = std::max(worst, std::abs(px - lx));
      worst = std::max(worst, std::abs(py - ly));
    }
  }
  return worst;
}

std::array<double, 2> ParsevalSides(const Distribution& p,
                                    const Distribution& q) {
  const HadamardSpec spec = ColumnSets(p.k());
  double lhs = 0.0;
  for (const IndexSet& c : spec.column_sets) {
    const double d = SubsetMass(p, c) - SubsetMass(q, c);
    lhs += d * d;
  }
  return {lhs, spec.order / 4.0 * L2Sq(p, q)};
}

bool SylvesterOrthogonal(int order) {
  absl::StatusOr<SignMatrix> h = Sylvester(order);
  if (!h.ok()) return false;
  const int words = (order + 63) / 64;
  // Column j packed as bits (1 for a -1 entry).
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(order) * words, 0);
  for (int j = 0; j < order; ++j) {
    for (int i = 0; i < order; ++i) {
      if ((*h)(i, j) == -1) cols[j * words + (i >> 6)] |= 1ULL << (i & 63);
    }
  }
  for (int a = 0; a < order; ++a) {
    for (int b = a; b < order; ++b) {
      int disagree = 0;
      for (int w = 0; w < words; ++w) {
        disagree += std::popcount(cols[a * words + w] ^ cols[b * words + w]);
      }
      const int dot = order - 2 * disagree;
      if (dot != (a == b ? order : 0)) return false;
    }
  }
  return true;
}

double SubsetPerturbationFraction(const Distribution& p, const Distribution& q,
                                  double eps) {
  const int k = p.k();
  const double cut = eps * eps / (2.0 * k);
  const std::uint64_t subsets = 1ULL << k;
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    double d = 0.0;
    for (int x = 0; x < k; ++x) {
      if ((s >> x) & 1ULL) d += p[x] - q[x];
    }
    if (d * d > cut) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(subsets);
}

std::vector<double> DeviationMatrix(const JointDistribution& p) {
  const auto [p1, p2] = Marginals(p);
  std::vector<double> delta(static_cast<std::size_t>(p.k1()) * p.k2());
  for (int i = 0; i < p.k1(); ++i) {
    for (int j = 0; j < p.k2(); ++j) {
      delta[i * p.k2() + j] = p.at(i, j) - p1[i] * p2[j];
    }
  }
  return delta;
}

double TvToMarginalProduct(const JointDistribution& p) {
  double l1 = 0.0;
  for (double d : DeviationMatrix(p)) l1 += std::abs(d);
  return 0.5 * l1;
}

double ProductSubsetPerturbationFraction(const JointDistribution& p,
                                         double eps) {
  const int k = p.k1();
  const std::vector<double> delta = DeviationMatrix(p);
  const double cut = eps * eps / (8.0 * k);
  const std::uint64_t subsets = 1ULL << k;
  std::vector<double> v(k);
  std::uint64_t hits = 0;
  for (std::uint64_t s2 = 0; s2 < subsets; ++s2) {
    for (int x = 0; x < k; ++x) {
      v[x] = 0.0;
      for (int y = 0; y < k; ++y) {
        if ((s2 >> y) & 1ULL) v[x] += delta[x * k + y];
      }
    }
    for (std::uint64_t s1 = 0; s1 < subsets; ++s1) {
      double z = 0.0;
      for (int x = 0; x < k; ++x) {
        if ((s1 >> x) & 1ULL) z += v[x];
      }
      if (z * z >= cut) ++hits;
    }
  }
  return static_cast<double>(hits) /
         (static_cast<double>(subsets) * static_cast<double>(subsets));
}

ZMoments ExactZMoments(std::span<const double> delta, int k, double alpha) {
  ZMoments out;
  for (double d : delta) out.frobenius_sq += d * d;
  const std::uint64_t subsets = 1ULL << k;
  const double cut = alpha * out.frobenius_sq;
  std::vector<double> v(k);
  std::uint64_t hits = 0;
  for (std::uint64_t ys = 0; ys < subsets; ++ys) {
    for (int x = 0; x < k; ++x) {
      v[x] = 0.0;
      for (int y = 0; y < k; ++y) {
        if ((ys >> y) & 1ULL) v[x] += delta[x * k + y];
      }
    }
    for (std::uint64_t xs = 0; xs < subsets; ++xs) {
      double z = 0.0;
      for (int x = 0; x < k; ++x) {
        if ((xs >> x) & 1ULL) z += v[x];
      }
      const double z2 = z * z;
      out.m1 += z;
      out.m2 += z2;
      out.m4 += z2 * z2;
      if (z2 >= cut) ++hits;
    }
  }
  const double total = static_cast<double>(subsets) * subsets;
  out.m1 /= total;
  out.m2 /= total;
  out.m4 /= total;
  out.tail = static_cast<double>(hits) / total;
  return out;
}

double MaxLineSum(std::span<const double> delta, int k) {
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (int j = 0; j < k; ++j) {
      row += delta[i * k + j];
      col += delta[j * k + i];
    }
    worst = std::max({worst, std::abs(row), std::abs(col)});
  }
  return worst;
}

std::vector<std::uint8_t> FourWiseFamily(int k) {
  std::vector<std::uint8_t> bits;
  bits.reserve(4096 * static_cast<std::size_t>(k));
  for (int coeffs = 0; coeffs < 4096; ++coeffs) {
    const int a[4] = {coeffs & 7, (coeffs >> 3) & 7, (coeffs >> 6) & 7,
                      (coeffs >> 9) & 7};
    for (int t = 0; t < k; ++t) {
      // Horner evaluation at the field point t.
      int v = a[3];
      for (int d = 2; d >= 0; --d) v = GfMul(v, t) ^ a[d];
      bits.push_back(static_cast<std::uint8_t>(v & 1));
    }
  }
  return bits;
}

std::vector<double> FourWiseTensor(int k) {
  const std::vector<std::uint8_t> family = FourWiseFamily(k);
  const std::size_t members = family.size() / k;
  std::vector<double> t(static_cast<std::size_t>(k) * k * k * k, 0.0);
  for (std::size_t m = 0; m < members; ++m) {
    const std::uint8_t* x = &family[m * k];
    std::size_t idx = 0;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        for (int c = 0; c < k; ++c) {
          for (int d = 0; d < k; ++d, ++idx) {
            t[idx] += x[a] & x[b] & x[c] & x[d];
          }
        }
      }
    }
  }
  for (double& v : t) v /= static_cast<double>(members);
  return t;
}

std::vector<double> IndependentTensor(int k) {
  std::vector<double> t(static_cast<std::size_t>(k) * k * k * k);
  std::size_t idx = 0;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        for (int d = 0; d < k; ++d, ++idx) {
          std::uint64_t distinct = (1ULL << a) | (1ULL << b) | (1ULL << c) |
                                   (1ULL << d);
          t[idx] = std::ldexp(1.0, -std::popcount(distinct));
        }
      }
    }
  }
  return t;
}

std::array<double, 3> ZMomentsFromTensor(std::span<const double> delta, int k,
                                         std::span<const double> tensor) {
  auto at = [&](int a, int b, int c, int d) {
    return tensor[((static_cast<std::size_t>(a) * k + b) * k + c) * k + d];
  };
  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      m1 += delta[i * k + j] * at(i, i, i, i) * at(j, j, j, j);
      for (int i2 = 0; i2 < k; ++i2) {
        for (int j2 = 0; j2 < k; ++j2) {
          m2 += delta[i * k + j] * delta[i2 * k + j2] * at(i, i2, i2, i2) *
                at(j, j2, j2, j2);
        }
      }
    }
  }
  std::vector<double> b(tensor.begin(), tensor.end());
  for (int mode = 0; mode < 4; ++mode) b = ModeProduct(b, delta, k, mode);
  double m4 = 0.0;
  for (std::size_t idx = 0; idx < b.size(); ++idx) m4 += tensor[idx] * b[idx];
  return {m1, m2, m4};
}

}  // namespace ldpt::oracle
