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

#include "ldpt/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ldpt/channels.h"
#include "ldpt/distribution.h"
#include "ldpt/hadamard.h"
#include "ldpt/identity.h"
#include "ldpt/independence.h"
#include "ldpt/oracles.h"
#include "ldpt/reduction.h"
#include "ldpt/smp.h"

namespace ldpt {
namespace {

constexpr double kRhos[] = {0.25, 0.5, 1.0, 2.0};

double RelErr(double got, double want) {
  if (std::isinf(got) || std::isinf(want)) {
    return got == want ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// measured <= bound passes.
CheckResult AtMost(double measured, double bound, double tolerance,
                   std::string detail = "") {
  CheckResult r;
  r.measured = measured;
  r.bound = bound;
  r.tolerance = tolerance;
  r.passed = measured <= bound + tolerance;
  r.detail = std::move(detail);
  return r;
}

// measured >= bound passes.
CheckResult AtLeast(double measured, double bound, std::string detail = "") {
  CheckResult r;
  r.measured = measured;
  r.bound = bound;
  r.passed = measured >= bound;
  r.detail = std::move(detail);
  return r;
}

Channel Flipped(absl::StatusOr<Channel> ch, const Perturbation& pert) {
  if (pert.flip_scale == 1.0) return *ch;
  return *ch->WithFlip(std::min(1.0, ch->flip() * pert.flip_scale));
}

RapporParams Params(double rho, const Perturbation& pert) {
  RapporParams p = *RapporParams::FromRho(rho);
  p.alpha *= pert.alpha_scale;
  return p;
}

ThresholdScale Scales(const Perturbation& pert) {
  const double s = pert.threshold_scale;
  return {s, s, s, s};
}

double L2Sq(const Distribution& p, const Distribution& q) {
  return *L2DistanceSq(p, q);
}

// Ratio every nontrivial one-bit channel must hit: e^rho, or 1 when the
// membership set does not split the inputs.
double ExpectedBitRatio(const IndexSet& s, int inputs, double rho) {
  const bool trivial = s.size() == 0 || s.size() == inputs;
  return trivial ? 1.0 : std::exp(rho);
}

CheckResult LdpRappor(const Perturbation& pert) {
  double worst = 0.0;
  for (double rho : kRhos) {
    for (int k = 1; k <= 12; ++k) {
      const Channel ch = Flipped(RapporChannel(k, rho), pert);
      const double want = k == 1 ? 1.0 : std::exp(rho);
      worst = std::max(worst, RelErr(*LdpRatio(ch), want));
    }
  }
  return AtMost(worst, 0.0, 1e-12,
                "max relative |ratio - e^rho|, k = 1..12, exhaustive");
}

CheckResult LdpHrBit(const Perturbation& pert) {
  double worst = 0.0;
  for (double rho : kRhos) {
    for (int k : {1, 2, 3, 5, 8, 16, 33, 64}) {
      const HadamardSpec spec = ColumnSets(k);
      for (const IndexSet& c : spec.column_sets) {
        const Channel ch = Flipped(HrBitChannel(c, k, rho), pert);
        const double want = ExpectedBitRatio(ch.membership(), k, rho);
        worst = std::max(worst, RelErr(*LdpRatio(ch), want));
      }
    }
  }
  return AtMost(worst, 0.0, 1e-12, "every Hadamard column set");
}

CheckResult LdpRrAndSubsets(const Perturbation& pert) {
  double worst = 0.0;
  for (double rho : kRhos) {
    const Channel rr = Flipped(RrBinaryChannel(rho), pert);
    worst = std::max(worst, RelErr(*LdpRatio(rr), std::exp(rho)));
    for (int k = 1; k <= 8; ++k) {
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> members;
        for (int x = 0; x < k; ++x) {
          if ((mask >> x) & 1u) members.push_back(x);
        }
        const IndexSet s = IndexSet::FromMembers(k, members);
        const Channel ch = Flipped(SubsetThenRr(s, rho), pert);
        worst = std::max(worst, RelErr(*LdpRatio(ch), ExpectedBitRatio(s, k, rho)));
      }
    }
  }
  return AtMost(worst, 0.0, 1e-12,
                "binary RR and every subset of [k], k <= 8");
}

CheckResult LdpNormalization(const Perturbation& pert) {
  double worst = 0.0;
  auto check = [&](const Channel& ch) {
    for (int x = 0; x < ch.input_size(); ++x) {
      double total = 0.0;
      for (std::uint64_t y = 0; y < ch.num_outputs(); ++y) {
        total += ch.Probability(y, x);
      }
      worst = std::max(worst, std::abs(total - 1.0));
    }
  };
  for (double rho : kRhos) {
    for (int k = 1; k <= 12; ++k) check(Flipped(RapporChannel(k, rho), pert));
    check(Flipped(RrBinaryChannel(rho), pert));
    for (const IndexSet& c : ColumnSets(6).column_sets) {
      check(Flipped(HrBitChannel(c, 6, rho), pert));
    }
  }
  return AtMost(worst, 0.0, 1e-12, "max |sum_y W(y|x) - 1|");
}

CheckResult LdpSentinels(const Perturbation&) {
  int failures = 0;
  const absl::StatusOr<double> wide = LdpRatio(*RapporChannel(21, 1.0));
  if (wide.ok() || wide.status().code() != absl::StatusCode::kFailedPrecondition) {
    ++failures;
  }
  const absl::StatusOr<Channel> identity =
      Channel::Tabular({{1.0, 0.0}, {0.0, 1.0}}, 1.0);
  if (!identity.ok() || !std::isinf(*LdpRatio(*identity))) ++failures;
  return AtMost(failures, 0.0, 0.0,
                "sampling-only channels refused; noiseless channel -> inf");
}

CheckResult RapporParamsCheck(const Perturbation& pert) {
  double worst = 0.0;
  for (double rho : kRhos) {
    const RapporParams p = Params(rho, pert);
    const Channel ch = Flipped(RapporChannel(2, rho), pert);
    worst = std::max(worst, std::abs(p.alpha - (1.0 - 2.0 * ch.flip())));
    worst = std::max(worst, std::abs(p.beta - ch.flip()));
  }
  return AtMost(worst, 0.0, 1e-12, "alpha = 1 - 2 flip, beta = flip");
}

struct RapporTuple {
  Distribution p;
  Distribution q;
  double rho;
};

std::vector<RapporTuple> RapporTuples() {
  std::vector<RapporTuple> tuples;
  Stream s(0x7a11);
  for (int t = 0; t < 20; ++t) {
    const double rho = kRhos[t % 4];
    Distribution p = oracle::RandomDistribution(2, s);
    Distribution q = t % 5 == 0 ? p : oracle::RandomDistribution(2, s);
    tuples.push_back({std::move(p), std::move(q), rho});
  }
  return tuples;
}

CheckResult RapporMeanExact(const Perturbation& pert) {
  double worst = 0.0;
  for (const RapporTuple& t : RapporTuples()) {
    const RapporParams params = Params(t.rho, pert);
    const Channel ch = Flipped(RapporChannel(2, t.rho), pert);
    for (int n : {2, 3}) {
      const oracle::Moments m =
          oracle::ExactRapporMoments(t.p, t.q, n, params, ch);
      const double want =
          oracle::RapporMeanClosedForm(t.p, t.q, n, params.alpha);
      worst = std::max(worst, std::abs(m.mean - want));
    }
  }
  return AtMost(worst, 0.0, 1e-9,
                "|E[T] - n(n-1) alpha^2 ||p-q||^2|, k = 2, n in {2,3}, 20 "
                "tuples");
}

CheckResult RapporVarianceExact(const Perturbation& pert) {
  double worst = 0.0;
  int violations = 0;
  for (const RapporTuple& t : RapporTuples()) {
    const RapporParams params = Params(t.rho, pert);
    const Channel ch = Flipped(RapporChannel(2, t.rho), pert);
    for (int n : {2, 3}) {
      const oracle::Moments m =
          oracle::ExactRapporMoments(t.p, t.q, n, params, ch);
      const double bound =
          oracle::RapporVarianceBound(2, n, params.alpha, L2Sq(t.p, t.q));
      worst = std::max(worst, m.variance / bound);
      if (m.variance > bound) ++violations;
    }
  }
  CheckResult r = AtMost(worst, 1.0, 0.0, "max Var[T] / bound");
  r.passed = violations == 0;
  return r;
}

CheckResult RapporJointLaw(const Perturbation& pert) {
  double worst = 0.0;
  Stream s(0xfac7);
  for (double rho : kRhos) {
    for (int k : {2, 3, 4}) {
      const Distribution p = oracle::RandomDistribution(k, s);
      worst = std::max(worst,
                       oracle::JointLawMaxError(p, Params(rho, pert),
                                             Flipped(RapporChannel(k, rho), pert)));
    }
  }
  return AtMost(worst, 0.0, 1e-12, "coordinate joint law, three cases");
}

// Monte-Carlo mean of T over `trials` runs of n players drawn from p.
struct McStats {
  double mean = 0.0;
  double se = 0.0;
  double variance = 0.0;
};

McStats RapporMonteCarlo(const Distribution& p, const Distribution& q, int n,
                         const RapporParams& params, const Channel& ch,
                         int trials, std::uint64_t seed) {
  const int k = p.k();
  const Sampler sampler(p);
  std::vector<std::int64_t> counts(k);
  std::vector<std::uint64_t> msg(1);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    Stream s = Stream::Derive(seed, t);
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      ch.Sample(sampler.Draw(s), s, msg);
      for (int x = 0; x < k; ++x) counts[x] += (msg[0] >> x) & 1ULL;
    }
    const double v = RapporStatistic(counts, n, q, params);
    sum += v;
    sum_sq += v * v;
  }
  McStats m;
  m.mean = sum / trials;
  m.variance = (sum_sq - trials * m.mean * m.mean) / (trials - 1);
  m.se = std::sqrt(m.variance / trials);
  return m;
}

CheckResult RapporMeanMonteCarlo(const Perturbation& pert) {
  const double rho = 1.0;
  const int k = 8;
  const int n = 100;
  const RapporParams params = Params(rho, pert);
  const Channel ch = Flipped(RapporChannel(k, rho), pert);
  const Distribution q = Distribution::Uniform(k);
  const Distribution far = *Paninski(k, 0.25, SignPattern::AllPlus(k / 2));
  double worst_z = 0.0;
  for (const Distribution* p : {&q, &far}) {
    const McStats m = RapporMonteCarlo(*p, q, n, params, ch, 100000, 0x3c);
    const double want = oracle::RapporMeanClosedForm(*p, q, n, params.alpha);
    worst_z = std::max(worst_z, std::abs(m.mean - want) / m.se);
  }
  return AtMost(worst_z, 3.0, 0.0,
                "|MC mean - closed form| / SE, k = 8, n = 100, 1e5 trials");
}

CheckResult RapporVarianceMonteCarlo(const Perturbation& pert) {
  int violations = 0;
  double worst = 0.0;
  Stream s(0x5a);
  for (int k : {2, 4, 8}) {
    for (int n : {20, 200}) {
      const double rho = 1.0;
      const RapporParams params = Params(rho, pert);
      const Channel ch = Flipped(RapporChannel(k, rho), pert);
      const Distribution p = oracle::RandomDistribution(k, s);
      const Distribution q = oracle::RandomDistribution(k, s);
      const int trials = 20000;
      const McStats m = RapporMonteCarlo(p, q, n, params, ch, trials,
                                         Mix64(k * 1000 + n));
      const double bound =
          oracle::RapporVarianceBound(k, n, params.alpha, L2Sq(p, q));
      // Sample variance SE for roughly Gaussian T: var * sqrt(2/(trials-1)).
      const double slack = 3.0 * m.variance * std::sqrt(2.0 / (trials - 1));
      worst = std::max(worst, m.variance / bound);
      if (m.variance > bound + slack) ++violations;
    }
  }
  CheckResult r = AtMost(worst, 1.0, 0.0,
                         "max sample Var[T] / bound, k <= 8, n <= 200");
  r.passed = violations == 0;
  return r;
}

CheckResult RapporThresholdSide(const Perturbation& pert) {
  const double rho = 1.0;
  const double eps = 0.25;
  const int k = 8;
  const int n = 200;
  const RapporParams params = Params(rho, pert);
  const Channel ch = Flipped(RapporChannel(k, rho), pert);
  const Distribution q = Distribution::Uniform(k);
  // TV slightly above eps.
  const Distribution far =
      *Paninski(k, eps * 1.05, SignPattern::AllPlus(k / 2));
  const McStats null_stats = RapporMonteCarlo(q, q, n, params, ch, 20000, 1);
  const McStats alt_stats = RapporMonteCarlo(far, q, n, params, ch, 20000, 2);
  const double thr = RapporThreshold(n, k, eps, params, pert.threshold_scale);
  const bool ok = std::abs(null_stats.mean) <= 3.0 * null_stats.se &&
                  alt_stats.mean - 3.0 * alt_stats.se > 4.0 * thr;
  CheckResult r = AtLeast(alt_stats.mean / thr, 4.0,
                          "alt mean / threshold (null mean within 3 SE of 0)");
  r.passed = ok;
  return r;
}

CheckResult ParsevalCheck(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x9a5e);
  for (int k : {2, 3, 5, 8, 16, 33}) {
    for (int t = 0; t < 200; ++t) {
      const Distribution p = oracle::RandomDistribution(k, s);
      const Distribution q = oracle::RandomDistribution(k, s);
      const auto [lhs, rhs] = oracle::ParsevalSides(p, q);
      worst = std::max(worst, RelErr(lhs, rhs));
    }
  }
  return AtMost(worst, 0.0, 1e-10,
                "sum_j (p(C_j)-q(C_j))^2 vs (K/4)||p-q||^2");
}

CheckResult OrthogonalityCheck(const Perturbation&) {
  int failures = 0;
  for (int order = 1; order <= 1024; order *= 2) {
    if (!oracle::SylvesterOrthogonal(order)) ++failures;
  }
  return AtMost(failures, 0.0, 0.0, "H^T H = K I for K = 1..1024");
}

CheckResult HrMeanLaw(const Perturbation& pert) {
  double worst = 0.0;
  Stream s(0x6a);
  for (double rho : kRhos) {
    for (int k : {2, 5, 8, 13}) {
      const Distribution p = oracle::RandomDistribution(k, s);
      const std::vector<double> mu = HrMeans(p, rho);
      const HadamardSpec spec = ColumnSets(k);
      for (int j = 0; j < spec.order; ++j) {
        const Channel ch =
            Flipped(HrBitChannel(spec.column_sets[j], k, rho), pert);
        double e_bit = 0.0;
        for (int x = 0; x < k; ++x) e_bit += p[x] * ch.Probability(1, x);
        worst = std::max(worst, std::abs(e_bit - mu[j]));
      }
    }
  }
  return AtMost(worst, 0.0, 1e-12, "E[B_j] from the channel vs mu(p)_j");
}

CheckResult HrIsometry(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x150);
  for (double rho : kRhos) {
    for (int k : {2, 3, 8, 16, 33}) {
      for (int t = 0; t < 20; ++t) {
        const Distribution p = oracle::RandomDistribution(k, s);
        const Distribution q = oracle::RandomDistribution(k, s);
        const std::vector<double> mp = HrMeans(p, rho);
        const std::vector<double> mq = HrMeans(q, rho);
        double lhs = 0.0;
        for (std::size_t j = 0; j < mp.size(); ++j) {
          lhs += (mp[j] - mq[j]) * (mp[j] - mq[j]);
        }
        const double g = HrGain(rho);
        worst = std::max(worst,
                         std::abs(lhs - g * g * HadamardOrder(k) * L2Sq(p, q)));
      }
    }
  }
  return AtMost(worst, 0.0, 1e-10, "||mu(p)-mu(q)||^2 vs g^2 K ||p-q||^2");
}

CheckResult HrRecovery(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x4ec);
  for (int k : {1, 2, 3, 4, 7, 16, 33}) {
    for (int t = 0; t < 20; ++t) {
      const Distribution p = oracle::RandomDistribution(k, s);
      const HadamardSpec spec = ColumnSets(k);
      std::vector<double> col(spec.order);
      for (int j = 0; j < spec.order; ++j) {
        col[j] = SubsetMass(p, spec.column_sets[j]);
      }
      const Distribution back = *RecoverFromColumnMasses(col, k);
      for (int x = 0; x < k; ++x) {
        worst = std::max(worst, std::abs(back[x] - p[x]));
      }
    }
  }
  return AtMost(worst, 0.0, 1e-10, "exact column masses -> p round trip");
}

CheckResult SubsetIdentity(const Perturbation&) {
  double worst = 1.0;
  Stream s(0x5b5);
  for (int k : {4, 6, 8, 10}) {
    for (int t = 0; t < 50; ++t) {
      Distribution p = oracle::RandomDistribution(k, s);
      Distribution q = oracle::RandomDistribution(k, s);
      if (t % 2 == 1) {
        // Half the instances are Paninski perturbations of uniform.
        q = Distribution::Uniform(k);
        p = *Paninski(k, 0.49 * s.Uniform() + 1e-3,
                      SignPattern::Random(k / 2, s));
      }
      const double eps = *TvDistance(p, q) * (1.0 - 1e-9);
      worst = std::min(worst, oracle::SubsetPerturbationFraction(p, q, eps));
    }
  }
  return AtLeast(worst, 1.0 / 288.0,
                 "min Pr_S[(p(S)-q(S))^2 > eps^2/(2k)], exhaustive over S");
}

JointDistribution FarJoint(int k, int t, Stream& s) {
  if (t % 3 == 0) return oracle::RandomJoint(k, k, s);
  // Mix a product with a correlated component so the far side varies.
  const Distribution a = oracle::RandomDistribution(k, s);
  const Distribution b = oracle::RandomDistribution(k, s);
  const JointDistribution prod = Product(a, b);
  const double w = 0.2 + 0.8 * s.Uniform();
  std::vector<double> mass(k * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double corr = t % 3 == 1 ? (i == j ? 1.0 / k : 0.0)
                                     : (j == (i + 1) % k ? 1.0 / k : 0.0);
      mass[i * k + j] = (1.0 - w) * prod.at(i, j) + w * corr;
    }
  }
  return *JointDistribution::Create(k, k, std::move(mass));
}

CheckResult SubsetProduct(const Perturbation&) {
  double worst = 1.0;
  Stream s(0x9b9);
  for (int k : {2, 4, 6, 8}) {
    for (int t = 0; t < 50; ++t) {
      const JointDistribution p = FarJoint(k, t, s);
      const double eps = oracle::TvToMarginalProduct(p) * (1.0 - 1e-9);
      if (eps <= 0.0) continue;
      worst = std::min(worst,
                       oracle::ProductSubsetPerturbationFraction(p, eps));
    }
  }
  return AtLeast(worst, 1.0 / 4096.0,
                 "min Pr[Z^2 >= eps^2/(8k)], exhaustive over (S1, S2)");
}

CheckResult SubsetExamples(const Perturbation&) {
  const Distribution p = *Distribution::Create({1.0, 0.0});
  const Distribution q = *Distribution::Create({0.0, 1.0});
  const double a = oracle::SubsetPerturbationFraction(p, q, 1.0 - 1e-12);
  const JointDistribution diag =
      *JointDistribution::Create(2, 2, {0.5, 0.0, 0.0, 0.5});
  const double b = oracle::ProductSubsetPerturbationFraction(diag, 0.5);
  const double err = std::max(std::abs(a - 0.5), std::abs(b - 0.25));
  return AtMost(err, 0.0, 1e-15,
                "k = 2 point masses -> 1/2; diagonal joint -> 1/4");
}

CheckResult MomentsExact(const Perturbation&) {
  double worst_mean = 0.0;
  double worst_second = 0.0;
  double worst_fourth_ratio = 0.0;
  double worst_lines = 0.0;
  Stream s(0xb0);
  for (int k = 2; k <= 8; ++k) {
    for (int t = 0; t < 10; ++t) {
      const JointDistribution p = FarJoint(k, t, s);
      const std::vector<double> delta = oracle::DeviationMatrix(p);
      worst_lines = std::max(worst_lines, oracle::MaxLineSum(delta, k));
      const oracle::ZMoments z = oracle::ExactZMoments(delta, k, 1.0 / 32.0);
      worst_mean = std::max(worst_mean, std::abs(z.m1));
      worst_second =
          std::max(worst_second, std::abs(z.m2 - z.frobenius_sq / 16.0));
      worst_fourth_ratio = std::max(
          worst_fourth_ratio, z.m4 / (4.0 * z.frobenius_sq * z.frobenius_sq));
    }
  }
  CheckResult r =
      AtMost(std::max(worst_mean, worst_second), 0.0, 1e-10,
             absl::StrCat("E[Z] and E[Z^2] - ||d||^2/16; max E[Z^4]/(4||d||^4) = ",
                          worst_fourth_ratio, "; max line sum = ",
                          worst_lines));
  r.passed = r.passed && worst_fourth_ratio <= 1.0 && worst_lines <= 1e-12;
  return r;
}

CheckResult MomentsPaleyZygmund(const Perturbation&) {
  const double alpha = 1.0 / 32.0;
  const double bound = (1.0 - 16.0 * alpha) * (1.0 - 16.0 * alpha) / 1024.0;
  double worst = 1.0;
  Stream s(0x9e);
  for (int t = 0; t < 50; ++t) {
    const int k = 2 + t % 7;
    const JointDistribution p = FarJoint(k, t, s);
    const std::vector<double> delta = oracle::DeviationMatrix(p);
    worst = std::min(worst, oracle::ExactZMoments(delta, k, alpha).tail);
  }
  return AtLeast(worst, bound, "min Pr[Z^2 >= ||d||^2/32]");
}

CheckResult MomentsFourWise(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x4444);
  for (int k : {3, 5, 8}) {
    const std::vector<double> four = oracle::FourWiseTensor(k);
    const std::vector<double> full = oracle::IndependentTensor(k);
    for (std::size_t i = 0; i < four.size(); ++i) {
      worst = std::max(worst, std::abs(four[i] - full[i]));
    }
    for (int t = 0; t < 3; ++t) {
      const std::vector<double> delta =
          oracle::DeviationMatrix(FarJoint(k, t, s));
      const auto a = oracle::ZMomentsFromTensor(delta, k, four);
      const oracle::ZMoments z = oracle::ExactZMoments(delta, k, 1.0 / 32.0);
      worst = std::max({worst, std::abs(a[0] - z.m1), std::abs(a[1] - z.m2),
                        std::abs(a[2] - z.m4)});
    }
  }
  return AtMost(worst, 0.0, 1e-10,
                "4-wise family moments vs fully independent enumeration");
}

CheckResult IndependenceChaining(const Perturbation&) {
  double worst = 0.0;
  Stream s(0xc4a1);
  for (int t = 0; t < 1000; ++t) {
    const int k = 2 + static_cast<int>(s.UniformInt(15));
    const Distribution p1 = oracle::RandomDistribution(k, s);
    const Distribution p2 = oracle::RandomDistribution(k, s);
    const Distribution h1 = oracle::RandomDistribution(k, s);
    const Distribution h2 = oracle::RandomDistribution(k, s);
    const double lhs =
        L2Sq(Product(h1, h2).Flatten(), Product(p1, p2).Flatten());
    const double rhs = 2.0 * (L2Sq(h1, p1) + L2Sq(h2, p2));
    worst = std::max(worst, lhs / rhs);
  }
  return AtMost(worst, 1.0, 1e-12,
                "max ||h1 x h2 - p1 x p2||^2 / (2(||h1-p1||^2+||h2-p2||^2))");
}

CheckResult IndependenceTwoByTwo(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x22);
  for (int t = 0; t < 100; ++t) {
    const std::vector<double> d =
        oracle::DeviationMatrix(oracle::RandomJoint(2, 2, s));
    for (double v : d) worst = std::max(worst, std::abs(std::abs(v) - std::abs(d[0])));
  }
  return AtMost(worst, 0.0, 1e-12, "|p(x,y) - p1(x)p2(y)| equal on all cells");
}

CheckResult IndependenceCertificate(const Perturbation&) {
  double worst = 0.0;
  Stream s(0xce);
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + t % 7;
    const Distribution p = FarJoint(k, t, s).Flatten();
    const Distribution r = Product(oracle::RandomDistribution(k, s),
                                   oracle::RandomDistribution(k, s))
                               .Flatten();
    const double tv = *TvDistance(p, r);
    const double lhs = 4.0 * tv * tv / (static_cast<double>(k) * k);
    worst = std::max(worst, lhs - L2Sq(p, r));
  }
  return AtMost(worst, 0.0, 1e-15, "(4/k^2) TV^2 <= ||p - r||^2");
}

CheckResult ReductionTiling(const Perturbation&) {
  int failures = 0;
  for (int k : {2, 4, 6, 8}) {
    const BlockLayout layout = *BlockLayout::Create(k);
    std::vector<int> hits(4 * k * k, 0);
    for (int i = 1; i <= layout.blocks(); ++i) {
      for (int j = 1; j <= 4; ++j) {
        for (const Cell c : {layout.a(i, j), layout.b(i, j)}) {
          if (c.row < 1 || c.row > 2 * k || c.col < 1 || c.col > 2 * k) {
            ++failures;
            continue;
          }
          ++hits[(c.row - 1) * 2 * k + (c.col - 1)];
        }
      }
    }
    for (int h : hits) failures += h != 1;
  }
  return AtMost(failures, 0.0, 0.0, "cells covered exactly once");
}

CheckResult ReductionTv(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x77);
  for (int t = 0; t < 500; ++t) {
    const int k = t % 2 == 0 ? 2 : 4;
    const Distribution p = oracle::RandomDistribution(k * k, s);
    const Distribution q = oracle::RandomDistribution(k * k, s);
    const double a = *TvDistance(*PhiMap(p, k), *PhiMap(q, k));
    worst = std::max(worst, std::abs(a - *TvDistance(p, q)));
  }
  return AtMost(worst, 0.0, 1e-12, "|TV(Phi p, Phi q) - TV(p, q)|");
}

CheckResult ReductionMarginals(const Perturbation&) {
  double worst = 0.0;
  Stream s(0x3a);
  for (int k : {2, 4, 6, 8}) {
    const JointDistribution u = *PhiMap(Distribution::Uniform(k * k), k);
    for (double m : u.mass()) {
      worst = std::max(worst, std::abs(m - 1.0 / (4.0 * k * k)));
    }
    for (int t = 0; t < 10; ++t) {
      const Distribution pz =
          *Paninski(k * k, 0.5 * s.Uniform(), SignPattern::Random(k * k / 2, s));
      const auto [m1, m2] = Marginals(*PhiMap(pz, k));
      for (int x = 0; x < 2 * k; ++x) {
        worst = std::max({worst, std::abs(m1[x] - 1.0 / (2 * k)),
                          std::abs(m2[x] - 1.0 / (2 * k))});
      }
    }
  }
  return AtMost(worst, 0.0, 1e-12,
                "Phi(uniform) uniform; Paninski marginals uniform");
}

CheckResult ReductionConverter(const Perturbation&) {
  double worst_z = 0.0;
  Stream s(0xc0);
  for (int k : {2, 4}) {
    const Distribution pz =
        *Paninski(k * k, 0.25, SignPattern::Random(k * k / 2, s));
    const JointDistribution target = *PhiMap(pz, k);
    const int side = 2 * k;
    std::vector<int> counts(side * side, 0);
    const int draws = 100000;
    const Sampler sampler(pz);
    for (int i = 0; i < draws; ++i) {
      const auto [r, c] = *PhiSampleConvert(sampler.Draw(s), k, s);
      ++counts[r * side + c];
    }
    for (int cell = 0; cell < side * side; ++cell) {
      const double pr = target.mass()[cell];
      const double se = std::sqrt(pr * (1.0 - pr) / draws);
      const double freq = static_cast<double>(counts[cell]) / draws;
      if (se > 0.0) worst_z = std::max(worst_z, std::abs(freq - pr) / se);
      else if (counts[cell] != 0) worst_z = std::numeric_limits<double>::infinity();
    }
  }
  return AtMost(worst_z, 3.0, 0.0,
                "max per-cell |freq - Phi(p)| / SE, 1e5 converted samples");
}

CheckResult ReductionHardness(const Perturbation&) {
  const double eps = 1.0 / 12.0;
  const JointDistribution h =
      *IndependenceHardnessInstance(2, eps, SignPattern::AllPlus(2));
  const double tv = *TvDistance(h, JointDistribution::Uniform(4, 4));
  return AtMost(std::abs(tv - 3.0 * eps), 0.0, 1e-12,
                "TV(hardness instance, uniform) = 3 eps");
}

CheckResult ThresholdsClosedForm(const Perturbation& pert) {
  const ThresholdScale scale = Scales(pert);
  double worst = 0.0;
  for (double rho : kRhos) {
    const RapporParams p = *RapporParams::FromRho(rho);
    for (int k : {2, 8, 16, 64}) {
      for (double eps : {0.1, 0.5}) {
        const std::int64_t n = 1000;
        worst = std::max(
            worst, RelErr(RapporThreshold(n, k, eps, p, scale.rappor),
                          n * (n - 1.0) * p.alpha * p.alpha * eps * eps / k));
        const double e = std::exp(rho);
        const double g = (e - 1.0) / (2.0 * (e + 1.0));
        int big_k = 1;
        while (big_k <= k) big_k *= 2;
        worst = std::max(
            worst,
            RelErr(HrThreshold(k, IdentityGapMode::ExactVsTv(eps), rho,
                               scale.hr),
                   g * g * big_k * 2.0 * eps * eps / k));
        const IdentityGapMode gap =
            *IdentityGapMode::L2Gap(eps * eps / k, 4.0 * eps * eps / k);
        worst = std::max(worst,
                         RelErr(HrThreshold(k, gap, rho, scale.hr),
                                g * g * big_k * 2.5 * eps * eps / k));
        const double eps_prime = eps / std::sqrt(2.0 * k);
        worst = std::max(worst,
                         RelErr(BinaryBiasTest(50, 100, 0.5, eps_prime, rho,
                                               scale.bias)
                                    ->threshold,
                                eps_prime / 2.0));
        worst = std::max(worst,
                         RelErr(BinaryIndependenceTest(1, 4, 2, 4, 2, 4, eps,
                                                       rho, scale.independence)
                                    ->threshold,
                                eps / 4.0));
      }
    }
  }
  const PublicCoinParams id = PublicCoinParams::IdentityLiteral(200);
  const PublicCoinParams ind = PublicCoinParams::IndependenceLiteral(200);
  const double c1 = 1.0 / 288.0;
  const double c2 = 1.0 / 4096.0;
  worst = std::max(worst, RelErr(id.RejectFractionCut(),
                                 c1 / (2.0 * (1.0 + c1)) + c1 / 4.0));
  worst = std::max(worst, RelErr(ind.RejectFractionCut(),
                                 c2 / (2.0 * (1.0 + c2)) + c2 / 4.0));
  worst = std::max(worst,
                   std::abs(static_cast<double>(*AmplificationRepetitions(1.0 / 3.0)) - 20.0));
  return AtMost(worst, 0.0, 1e-12,
                "tester thresholds vs independent closed forms");
}

// ----- Full-level sampling checks -----

CheckResult SamplerAgreement(const Perturbation& pert) {
  double worst_z = 0.0;
  const int draws = 200000;
  Stream s(0xa9);
  std::vector<std::uint64_t> msg(1);
  for (double rho : kRhos) {
    const Channel rr = Flipped(RrBinaryChannel(rho), pert);
    const Channel ref = *RrBinaryChannel(rho);
    for (int x = 0; x < 2; ++x) {
      int ones = 0;
      for (int i = 0; i < draws; ++i) ones += rr.SampleBit(x, s);
      const double pr = ref.Probability(1, x);
      const double se = std::sqrt(pr * (1.0 - pr) / draws);
      worst_z = std::max(worst_z, std::abs(static_cast<double>(ones) / draws - pr) / se);
    }
  }
  // RAPPOR coordinate law at 1e6 draws.
  const int k = 4;
  const double rho = 1.0;
  const Channel ch = Flipped(RapporChannel(k, rho), pert);
  const RapporParams params = *RapporParams::FromRho(rho);
  const Distribution p = *Distribution::Create({0.1, 0.2, 0.3, 0.4});
  const Sampler sampler(p);
  std::vector<int> ones(k, 0);
  const int big = 1000000;
  for (int i = 0; i < big; ++i) {
    ch.Sample(sampler.Draw(s), s, msg);
    for (int j = 0; j < k; ++j) ones[j] += (msg[0] >> j) & 1ULL;
  }
  for (int j = 0; j < k; ++j) {
    const double pr = params.alpha * p[j] + params.beta;
    const double se = std::sqrt(pr * (1.0 - pr) / big);
    worst_z = std::max(worst_z, std::abs(static_cast<double>(ones[j]) / big - pr) / se);
  }
  return AtMost(worst_z, 3.0, 0.0,
                "sampled frequencies vs exact channel law, max |z|");
}

CheckResult SmpConditionalIndependence(const Perturbation&) {
  // Two players with a fixed public seed: contingency of their bits.
  const int trials = 100000;
  const PublicSeed seed{42};
  const std::vector<int> samples = {0, 3};
  const int k = 4;
  const double rho = 1.0;
  const ProtocolSetup setup =
      [&](const PublicSeed& v) -> absl::StatusOr<ChannelAssignment> {
    Stream shared = v.stream();
    ChannelAssignment a;
    a.channels.push_back(*SubsetThenRr(IndexSet::Random(k, shared), rho));
    a.channels.push_back(*SubsetThenRr(IndexSet::Random(k, shared), rho));
    a.channel_of = {0, 1};
    return a;
  };
  double table[2][2] = {{0, 0}, {0, 0}};
  for (int t = 0; t < trials; ++t) {
    const Transcript tr = *RunPublicCoin(setup, samples, seed, Mix64(t + 1));
    ++table[tr.messages.bit(0, 0)][tr.messages.bit(1, 0)];
  }
  double chi2 = 0.0;
  const double r0 = table[0][0] + table[0][1];
  const double c0 = table[0][0] + table[1][0];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double ra = a == 0 ? r0 : trials - r0;
      const double cb = b == 0 ? c0 : trials - c0;
      const double expected = ra * cb / trials;
      chi2 += (table[a][b] - expected) * (table[a][b] - expected) / expected;
    }
  }
  // 1-dof chi-square: 3 SE in z corresponds to chi2 <= 9.
  return AtMost(chi2, 9.0, 0.0, "2x2 contingency chi-square, 1 dof");
}

CheckResult HrFrequencyRate(const Perturbation&) {
  const int k = 4;
  const std::vector<int> samples(100000, 1);
  int good = 0;
  const int trials = 200;
  const Distribution target = Distribution::PointMass(k, 1);
  for (int t = 0; t < trials; ++t) {
    const Distribution est =
        *HrFrequencyEstimate(samples, k, 1.0, Mix64(0xf00 + t));
    if (L2Sq(est, target) <= 0.01) ++good;
  }
  return AtLeast(static_cast<double>(good) / trials, 0.9,
                 "fraction of trials with ||p_hat - p||^2 <= 0.01");
}

}  // namespace

std::vector<VerifyCheck> VerifyChecks() {
  return {
      {"ldp.rappor", "ldp", false, LdpRappor},
      {"ldp.hr_bit", "ldp", false, LdpHrBit},
      {"ldp.rr_and_subsets", "ldp", false, LdpRrAndSubsets},
      {"ldp.normalization", "ldp", false, LdpNormalization},
      {"ldp.sentinels", "ldp", false, LdpSentinels},
      {"rappor.params", "rappor", false, RapporParamsCheck},
      {"rappor.mean_exact", "rappor", false, RapporMeanExact},
      {"rappor.variance_exact", "rappor", false, RapporVarianceExact},
      {"rappor.joint_law", "rappor", false, RapporJointLaw},
      {"rappor.mean_monte_carlo", "rappor", false, RapporMeanMonteCarlo},
      {"rappor.variance_monte_carlo", "rappor", true, RapporVarianceMonteCarlo},
      {"rappor.threshold_side", "rappor", true, RapporThresholdSide},
      {"hadamard.parseval", "hadamard", false, ParsevalCheck},
      {"hadamard.orthogonality", "hadamard", false, OrthogonalityCheck},
      {"hadamard.mean_law", "hadamard", false, HrMeanLaw},
      {"hadamard.isometry", "hadamard", false, HrIsometry},
      {"hadamard.recovery", "hadamard", false, HrRecovery},
      {"hadamard.frequency_rate", "hadamard", true, HrFrequencyRate},
      {"subsets.identity", "subsets", false, SubsetIdentity},
      {"subsets.product", "subsets", false, SubsetProduct},
      {"subsets.examples", "subsets", false, SubsetExamples},
      {"moments.exact", "moments", false, MomentsExact},
      {"moments.paley_zygmund", "moments", false, MomentsPaleyZygmund},
      {"moments.four_wise", "moments", false, MomentsFourWise},
      {"independence.chaining", "independence", false, IndependenceChaining},
      {"independence.two_by_two", "independence", false, IndependenceTwoByTwo},
      {"independence.far_certificate", "independence", false,
       IndependenceCertificate},
      {"reduction.tiling", "reduction", false, ReductionTiling},
      {"reduction.tv_preservation", "reduction", false, ReductionTv},
      {"reduction.marginals", "reduction", false, ReductionMarginals},
      {"reduction.converter", "reduction", false, ReductionConverter},
      {"reduction.hardness", "reduction", false, ReductionHardness},
      {"thresholds.closed_form", "thresholds", false, ThresholdsClosedForm},
      {"channels.sampler_agreement", "ldp", true, SamplerAgreement},
      {"smp.conditional_independence", "smp", true,
       SmpConditionalIndependence},
  };
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& r) { return r.passed; });
}

namespace {

VerifyReport RunChecks(const std::vector<VerifyCheck>& checks,
                       const Perturbation& pert,
                       const std::function<void(const CheckResult&)>& progress) {
  VerifyReport report;
  const auto start = std::chrono::steady_clock::now();
  for (const VerifyCheck& c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r = c.run(pert);
    r.name = c.name;
    r.group = c.group;
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (progress) progress(r);
    report.checks.push_back(std::move(r));
  }
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace

VerifyReport VerifySuite(VerifyLevel level, const Perturbation& perturbation,
                         const std::function<void(const CheckResult&)>& progress) {
  std::vector<VerifyCheck> selected;
  for (VerifyCheck& c : VerifyChecks()) {
    if (c.full_only && level == VerifyLevel::kQuick) continue;
    selected.push_back(std::move(c));
  }
  return RunChecks(selected, perturbation, progress);
}

VerifyReport VerifyGroup(const std::string& group, VerifyLevel level,
                         const Perturbation& perturbation) {
  std::vector<VerifyCheck> selected;
  for (VerifyCheck& c : VerifyChecks()) {
    if (c.group != group) continue;
    if (c.full_only && level == VerifyLevel::kQuick) continue;
    selected.push_back(std::move(c));
  }
  return RunChecks(selected, perturbation, nullptr);
}

std::string FormatCheck(const CheckResult& r) {
  return absl::StrFormat("%-4s %-32s measured=%-12.6g bound=%-12.6g tol=%-8.2g %6.2fs  %s",
                         r.passed ? "PASS" : "FAIL", r.name, r.measured,
                         r.bound, r.tolerance, r.seconds, r.detail);
}

}  // namespace ldpt
