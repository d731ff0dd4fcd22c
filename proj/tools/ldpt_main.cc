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

// ldpt: run experiments, sweep player counts, verify the library, and
// certify channels.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ldpt/channels.h"
#include "ldpt/experiment.h"
#include "ldpt/hadamard.h"
#include "ldpt/verify.h"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

int Fail(const absl::Status& s) {
  std::cerr << "ldpt: " << s.message() << "\n";
  return kUsage;
}

// Flag values that override config keys when set.
struct Overrides {
  std::optional<std::string> protocol;
  std::optional<int> k;
  std::optional<double> eps;
  std::optional<double> rho;
  std::optional<double> delta;
  std::vector<std::int64_t> n;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<std::uint64_t> public_seed;
  std::optional<int> t_reps;
  std::optional<int> threads;
  bool timing = false;
};

void AddOverrideFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--protocol", o.protocol,
                  "rappor-id | hr-id | public-id | private-indep | "
                  "public-indep");
  cmd->add_option("--k", o.k, "domain size");
  cmd->add_option("--eps", o.eps, "distance parameter in (0,1)");
  cmd->add_option("--rho", o.rho, "privacy level");
  cmd->add_option("--delta", o.delta, "target error probability");
  cmd->add_option("--n", o.n, "player counts (strictly increasing)");
  cmd->add_option("--trials", o.trials, "trials per hypothesis");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--public-seed-policy", o.policy,
                  "fresh-per-trial | fixed");
  cmd->add_option("--public-seed", o.public_seed,
                  "public seed used with the fixed policy");
  cmd->add_option("--t-reps", o.t_reps, "public-coin repetitions");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--timing", o.timing, "record wall_ms");
}

absl::Status Apply(const Overrides& o, ldpt::ExperimentConfig& c) {
  if (o.protocol) {
    absl::StatusOr<ldpt::Protocol> p = ldpt::ParseProtocol(*o.protocol);
    if (!p.ok()) return p.status();
    c.protocol = *p;
    c.public_coin = ldpt::DefaultPublicCoinParams(c.protocol);
  }
  if (o.k) c.k = *o.k;
  if (o.eps) c.eps = *o.eps;
  if (o.rho) c.rho = *o.rho;
  if (o.delta) c.delta = *o.delta;
  if (!o.n.empty()) c.n = o.n;
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.policy) {
    absl::StatusOr<ldpt::SeedPolicy> p = ldpt::ParseSeedPolicy(*o.policy);
    if (!p.ok()) return p.status();
    c.public_seed_policy = *p;
  }
  if (o.public_seed) c.public_seed = *o.public_seed;
  if (o.t_reps) c.public_coin.repetitions = *o.t_reps;
  if (o.threads) c.threads = *o.threads;
  if (o.timing) c.record_timing = true;
  ldpt::FillDefaultPlayers(c);
  return ldpt::ValidateConfig(c);
}

int EmitCsv(const std::vector<ldpt::ResultRow>& rows, const std::string& out) {
  const std::string text = ldpt::FormatCsv(rows);
  if (out.empty() || out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) return Fail(absl::NotFoundError(absl::StrCat("cannot write ", out)));
  f << text;
  return f ? kOk : Fail(absl::DataLossError(absl::StrCat("short write to ", out)));
}

int RunCommand(const std::string& config_path, const Overrides& o,
               const std::string& out) {
  absl::StatusOr<ldpt::ExperimentConfig> config = ldpt::ReadConfig(config_path, false);
  if (!config.ok()) return Fail(config.status());
  if (absl::Status s = Apply(o, *config); !s.ok()) return Fail(s);
  absl::StatusOr<ldpt::ExperimentResult> result = ldpt::RunExperiment(*config);
  if (!result.ok()) return Fail(result.status());
  return EmitCsv(result->rows, out);
}

struct SweepArgs {
  std::string config_path;
  std::vector<std::string> protocols;
  std::vector<int> ks;
  double resolution = 0.05;
  double target = 1.0 / 3.0;
};

int SweepCommand(const SweepArgs& a, const Overrides& o,
                 const std::string& out) {
  std::vector<ldpt::ResultRow> rows;
  std::vector<std::string> protocols = a.protocols;
  if (protocols.empty()) {
    protocols = o.protocol ? std::vector<std::string>{*o.protocol}
                           : std::vector<std::string>{"rappor-id",
                                                      "public-id"};
  }
  for (const std::string& name : protocols) {
    absl::StatusOr<ldpt::Protocol> protocol = ldpt::ParseProtocol(name);
    if (!protocol.ok()) return Fail(protocol.status());
    std::vector<int> ks = a.ks;
    if (ks.empty()) ks.push_back(o.k.value_or(16));
    for (int k : ks) {
      ldpt::ExperimentConfig c;
      if (!a.config_path.empty()) {
        absl::StatusOr<ldpt::ExperimentConfig> base =
            ldpt::ReadConfig(a.config_path, false);
        if (!base.ok()) return Fail(base.status());
        c = *base;
        c.protocol = *protocol;
        c.public_coin = ldpt::DefaultPublicCoinParams(*protocol);
      } else {
        c = ldpt::DefaultConfig(*protocol, k, o.eps.value_or(0.5),
                                o.rho.value_or(1.0));
      }
      Overrides per = o;
      per.protocol.reset();
      per.k = k;
      if (absl::Status s = Apply(per, c); !s.ok()) return Fail(s);
      c.n = {ldpt::DefaultPlayers(c.protocol, c.k, c.eps, c.rho)};
      ldpt::SearchOptions search;
      search.resolution = a.resolution;
      search.target = a.target;
      absl::StatusOr<ldpt::ResultRow> row = ldpt::FindMinPlayers(c, search);
      if (!row.ok()) return Fail(row.status());
      std::cerr << absl::StrFormat("%s k=%d: n=%d type1=%g type2=%g\n", name,
                                   k, row->n, row->type1, row->type2);
      rows.push_back(*row);
    }
  }
  return EmitCsv(rows, out);
}

int VerifyCommand(const std::string& level_name, const std::string& group) {
  ldpt::VerifyLevel level;
  if (level_name == "quick") {
    level = ldpt::VerifyLevel::kQuick;
  } else if (level_name == "full") {
    level = ldpt::VerifyLevel::kFull;
  } else {
    return Fail(absl::InvalidArgumentError(
        absl::StrCat("unknown level `", level_name, "`")));
  }
  auto print = [](const ldpt::CheckResult& r) {
    std::cout << ldpt::FormatCheck(r) << std::endl;
  };
  ldpt::VerifyReport report;
  if (group.empty()) {
    report = ldpt::VerifySuite(level, {}, print);
  } else {
    report = ldpt::VerifyGroup(group, level);
    if (report.checks.empty()) {
      return Fail(absl::InvalidArgumentError(
          absl::StrCat("no checks in group `", group, "`")));
    }
    for (const ldpt::CheckResult& r : report.checks) print(r);
  }
  int failed = 0;
  for (const ldpt::CheckResult& r : report.checks) failed += !r.passed;
  std::cout << absl::StrFormat("%d/%d checks passed in %.2fs\n",
                               report.checks.size() - failed,
                               report.checks.size(), report.seconds);
  return failed == 0 ? kOk : kVerifyFailed;
}

// Certifies every channel of one mechanism family at (rho, k).
int LdpCheckCommand(const std::string& mechanism, double rho, int k) {
  if (k < 1) return Fail(absl::InvalidArgumentError("k must be >= 1"));
  std::vector<absl::StatusOr<ldpt::Channel>> channels;
  if (mechanism == "rappor") {
    channels.push_back(ldpt::RapporChannel(k, rho));
  } else if (mechanism == "hr") {
    for (const ldpt::IndexSet& c : ldpt::ColumnSets(k).column_sets) {
      channels.push_back(ldpt::HrBitChannel(c, k, rho));
    }
  } else if (mechanism == "rr") {
    channels.push_back(ldpt::RrBinaryChannel(rho));
  } else if (mechanism == "subset") {
    if (k > 16) {
      return Fail(absl::InvalidArgumentError(
          "subset certification enumerates 2^k sets; use k <= 16"));
    }
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> members;
      for (int x = 0; x < k; ++x) {
        if ((mask >> x) & 1u) members.push_back(x);
      }
      channels.push_back(
          ldpt::SubsetThenRr(ldpt::IndexSet::FromMembers(k, members), rho));
    }
  } else {
    return Fail(absl::InvalidArgumentError(absl::StrCat(
        "unknown mechanism `", mechanism, "` (rappor | hr | rr | subset)")));
  }
  double worst = 0.0;
  for (const absl::StatusOr<ldpt::Channel>& ch : channels) {
    if (!ch.ok()) return Fail(ch.status());
    absl::StatusOr<double> ratio = ldpt::LdpRatio(*ch);
    if (!ratio.ok()) return Fail(ratio.status());
    worst = std::max(worst, *ratio);
  }
  const bool ok = ldpt::CertifiesLdp(worst, rho);
  std::cout << absl::StrFormat(
      "%s rho=%g k=%d channels=%d ldp_ratio=%.17g e^rho=%.17g %s\n",
      mechanism, rho, k, channels.size(), worst, std::exp(rho),
      ok ? "CERTIFIED" : "VIOLATION");
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LDP identity and independence testing simulator"};
  app.require_subcommand(1);

  Overrides run_overrides;
  std::string run_config;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", run_config, "JSON config")->required();
  run->add_option("--out", run_out, "CSV output path (default stdout)");
  AddOverrideFlags(run, run_overrides);

  Overrides sweep_overrides;
  SweepArgs sweep_args;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "search the smallest n reaching the target error");
  sweep->add_option("config", sweep_args.config_path,
                    "optional base JSON config");
  sweep->add_option("--protocols", sweep_args.protocols,
                    "protocols to search (default rappor-id public-id)");
  sweep->add_option("--ks", sweep_args.ks, "domain sizes (default 16)");
  sweep->add_option("--resolution", sweep_args.resolution,
                    "relative bisection resolution");
  sweep->add_option("--target", sweep_args.target, "two-sided error target");
  sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
  AddOverrideFlags(sweep, sweep_overrides);

  std::string level = "quick";
  std::string group;
  CLI::App* verify = app.add_subcommand("verify", "run the oracle suite");
  verify->add_option("--level", level, "quick | full");
  verify->add_option("--group", group, "run one check group only");

  std::string mechanism;
  double rho = 0.0;
  int k = 0;
  CLI::App* ldp = app.add_subcommand(
      "ldp-check", "certify a mechanism by exhaustive enumeration");
  ldp->add_option("mechanism", mechanism, "rappor | hr | rr | subset")
      ->required();
  ldp->add_option("rho", rho, "privacy level")->required();
  ldp->add_option("k", k, "domain size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*run) return RunCommand(run_config, run_overrides, run_out);
  if (*sweep) return SweepCommand(sweep_args, sweep_overrides, sweep_out);
  if (*verify) return VerifyCommand(level, group);
  if (*ldp) return LdpCheckCommand(mechanism, rho, k);
  return kUsage;
}
