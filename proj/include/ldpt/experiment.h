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

#ifndef LDPT_EXPERIMENT_H_
#define LDPT_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/distribution.h"
#include "ldpt/identity.h"

namespace ldpt {

enum class Protocol { kRapporId, kHrId, kPublicId, kPrivateIndep, kPublicIndep };
enum class SeedPolicy { kFreshPerTrial, kFixed };

std::string_view ProtocolName(Protocol p);
absl::StatusOr<Protocol> ParseProtocol(std::string_view name);
std::string_view SeedPolicyName(SeedPolicy p);
absl::StatusOr<SeedPolicy> ParseSeedPolicy(std::string_view name);
bool IsIndependence(Protocol p);

// The alternative-hypothesis instance. The null instance is derived from it:
// the reference q for identity protocols, the product of the alternative's
// marginals for independence protocols.
struct InstanceSpec {
  enum class Kind { kNull, kPaninski, kCorrelated, kHardness, kCustom };
  enum class Signs { kPlus, kRandom, kExplicit };

  Kind kind = Kind::kPaninski;
  std::optional<double> gamma;  // Paninski; defaults to eps
  Signs signs = Signs::kPlus;
  std::vector<int> z;          // kExplicit
  std::string mass_file;       // kCustom, resolved by ReadConfig
  std::vector<double> mass;    // kCustom
};

struct ExperimentConfig {
  Protocol protocol = Protocol::kRapporId;
  int k = 0;
  double eps = 0.0;
  double rho = 0.0;
  double delta = 1.0 / 3.0;
  std::vector<std::int64_t> n;  // strictly increasing
  int trials = 100;
  std::uint64_t seed = 1;
  SeedPolicy public_seed_policy = SeedPolicy::kFreshPerTrial;
  std::uint64_t public_seed = 0;  // used with kFixed
  InstanceSpec instance;
  std::vector<double> reference;  // identity reference q; empty = uniform
  PublicCoinParams public_coin;   // T_reps, c, delta0
  int threads = 1;                // 0 = hardware concurrency
  bool record_timing = false;     // wall_ms stays 0 otherwise
};

// Frozen calibration of the public-coin protocols. Default configs use it.
PublicCoinParams DefaultPublicCoinParams(Protocol protocol);

// Frozen player counts reaching two-sided error 1/3 at delta = 1/3 (see
// README for how they were measured).
std::int64_t DefaultPlayers(Protocol protocol, int k, double eps, double rho);

// A config with every optional key at its default and n = DefaultPlayers.
ExperimentConfig DefaultConfig(Protocol protocol, int k, double eps,
                               double rho);

// Sets n = {DefaultPlayers(...)} when n is empty and k, eps, rho are valid.
void FillDefaultPlayers(ExperimentConfig& config);

absl::Status ValidateConfig(const ExperimentConfig& config);

// Parses JSON text. `base_dir` resolves a relative mass_file. With
// validate = false only syntax and key errors are reported, so callers can
// apply overrides before calling ValidateConfig.
absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view json_text,
                                             const std::string& base_dir = ".",
                                             bool validate = true);
absl::StatusOr<ExperimentConfig> ReadConfig(const std::string& path,
                                            bool validate = true);
std::string ConfigToJson(const ExperimentConfig& config);

struct ResultRow {
  std::string protocol;
  int k = 0;
  double eps = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  std::int64_t n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string public_seed_policy;
  double type1 = 0.0;
  double type2 = 0.0;
  double wall_ms = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ResultRow> rows;  // one per n, in sweep order
};

inline constexpr std::string_view kCsvHeader =
    "protocol,k,eps,rho,delta,n,trials,seed,public_seed_policy,type1,type2,"
    "wall_ms";

// The two hypotheses of an experiment, materialized.
struct Instances {
  Distribution null_dist;         // over [k] or flattened [k]x[k]
  Distribution reference;         // identity reference q
  std::optional<Distribution> alt;  // absent for random per-trial signs
};

absl::StatusOr<Instances> BuildInstances(const ExperimentConfig& config);

// One protocol execution on the given samples. Applies error amplification
// when config.delta < 1/3.
absl::StatusOr<TestVerdict> RunProtocol(const ExperimentConfig& config,
                                        const Distribution& reference,
                                        std::span<const int> samples,
                                        std::uint64_t master_seed,
                                        std::uint64_t public_seed);

// Empirical type-I and type-II error at one n.
absl::StatusOr<ResultRow> RunPoint(const ExperimentConfig& config,
                                   std::int64_t n);

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& config);

std::string FormatCsv(const std::vector<ResultRow>& rows);
absl::Status WriteCsv(const ExperimentResult& result, const std::string& path);
absl::StatusOr<std::vector<ResultRow>> ParseCsv(std::string_view text);

// Smallest n (up to a relative resolution) whose two-sided error
// max(type1, type2) is at most `target`: doubling from `start`, then
// bisection. Returns the row measured at that n.
struct SearchOptions {
  double target = 1.0 / 3.0;
  std::int64_t start = 0;        // 0 = DefaultPlayers / 8
  double resolution = 0.05;      // stop when hi/lo - 1 <= resolution
  std::int64_t max_players = 1LL << 26;
};
absl::StatusOr<ResultRow> FindMinPlayers(const ExperimentConfig& config,
                                         const SearchOptions& options = {});

}  // namespace ldpt

#endif  // LDPT_EXPERIMENT_H_
