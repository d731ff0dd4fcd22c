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

#include "ldpt/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "ldpt/channels.h"
#include "ldpt/hadamard.h"
#include "ldpt/independence.h"
#include "ldpt/reduction.h"
#include "ldpt/status_macros.h"

namespace ldpt {
namespace {

using Json = nlohmann::json;

constexpr struct {
  Protocol protocol;
  std::string_view name;
} kProtocols[] = {
    {Protocol::kRapporId, "rappor-id"},
    {Protocol::kHrId, "hr-id"},
    {Protocol::kPublicId, "public-id"},
    {Protocol::kPrivateIndep, "private-indep"},
    {Protocol::kPublicIndep, "public-indep"},
};

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Smallest n every protocol step accepts.
std::int64_t MinFeasiblePlayers(const ExperimentConfig& c) {
  std::int64_t base = 2;
  switch (c.protocol) {
    case Protocol::kRapporId:
      base = 2;
      break;
    case Protocol::kHrId:
      base = 2 * HadamardOrder(c.k);
      break;
    case Protocol::kPublicId:
      base = c.public_coin.repetitions;
      break;
    case Protocol::kPrivateIndep:
      base = 2 * HadamardOrder(c.k) + 2 * HadamardOrder(c.k * c.k);
      break;
    case Protocol::kPublicIndep:
      base = 3 * c.public_coin.repetitions;
      break;
  }
  if (c.delta < 1.0 / 3.0) {
    absl::StatusOr<int> reps = AmplificationRepetitions(c.delta);
    if (reps.ok()) base *= *reps;
  }
  return base;
}

absl::StatusOr<Distribution> PaninskiInstance(const ExperimentConfig& c,
                                              int domain,
                                              const SignPattern& z) {
  const double gamma = c.instance.gamma.value_or(c.eps);
  return Paninski(domain, gamma, z);
}

int InstanceDomain(const ExperimentConfig& c) {
  return IsIndependence(c.protocol) ? c.k * c.k : c.k;
}

absl::StatusOr<Distribution> AltWithSigns(const ExperimentConfig& c,
                                          const SignPattern& z) {
  const int domain = InstanceDomain(c);
  if (c.instance.kind == InstanceSpec::Kind::kHardness) {
    ASSIGN_OR_RETURN(const JointDistribution j,
                     IndependenceHardnessInstance(c.k / 2, c.eps, z));
    return j.Flatten();
  }
  return PaninskiInstance(c, domain, z);
}

int SignLength(const ExperimentConfig& c) {
  if (c.instance.kind == InstanceSpec::Kind::kHardness) {
    return (c.k / 2) * (c.k / 2) / 2;
  }
  return InstanceDomain(c) / 2;
}

template <typename T>
absl::StatusOr<T> Get(const Json& j, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing required key `", std::string(key), "`"));
  }
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `", std::string(key), "` has the wrong type: ", e.what()));
  }
}

template <typename T>
absl::Status GetOptional(const Json& j, std::string_view key, T& out) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) return absl::OkStatus();
  try {
    out = it->get<T>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `", std::string(key), "` has the wrong type: ", e.what()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> ReadMassFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open mass file ", path));
  }
  std::vector<double> mass;
  std::string token;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    for (absl::string_view piece :
         absl::StrSplit(line, absl::ByAnyChar(" ,\t\r"), absl::SkipEmpty())) {
      double v = 0.0;
      auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
      if (res.ec != std::errc() || res.ptr != piece.data() + piece.size()) {
        return absl::InvalidArgumentError(absl::StrCat(
            path, ":", line_no, ": cannot parse mass `", piece, "`"));
      }
      mass.push_back(v);
    }
  }
  return mass;
}

}  // namespace

std::string_view ProtocolName(Protocol p) {
  for (const auto& e : kProtocols) {
    if (e.protocol == p) return e.name;
  }
  return "unknown";
}

absl::StatusOr<Protocol> ParseProtocol(std::string_view name) {
  for (const auto& e : kProtocols) {
    if (e.name == name) return e.protocol;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown protocol `", std::string(name),
      "` (expected rappor-id, hr-id, public-id, private-indep or "
      "public-indep)"));
}

std::string_view SeedPolicyName(SeedPolicy p) {
  return p == SeedPolicy::kFixed ? "fixed" : "fresh-per-trial";
}

absl::StatusOr<SeedPolicy> ParseSeedPolicy(std::string_view name) {
  if (name == "fixed") return SeedPolicy::kFixed;
  if (name == "fresh-per-trial") return SeedPolicy::kFreshPerTrial;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown public_seed_policy `", std::string(name),
      "` (expected fresh-per-trial or fixed)"));
}

bool IsIndependence(Protocol p) {
  return p == Protocol::kPrivateIndep || p == Protocol::kPublicIndep;
}

PublicCoinParams DefaultPublicCoinParams(Protocol protocol) {
  // One repetition; with T = 1 the accept rule reduces to the single
  // subset test, so c and delta0 only fix the (unused) fraction cut.
  (void)protocol;
  return {1, 0.5, 1.0 / 3.0};
}

std::int64_t DefaultPlayers(Protocol protocol, int k, double eps, double rho) {
  const double e = std::exp(rho);
  const double a = (e - 1.0) / (e + 1.0);  // randomized-response contraction
  const double g = HrGain(rho);
  const RapporParams rp = *RapporParams::FromRho(rho);
  const double kk = k;
  double n = 0.0;
  switch (protocol) {
    case Protocol::kRapporId:
      n = 0.25 * std::pow(kk, 1.5) / (rp.alpha * rp.alpha * eps * eps);
      break;
    case Protocol::kHrId:
      n = 0.22 * std::pow(kk, 1.5) / (g * g * eps * eps);
      break;
    case Protocol::kPublicId:
      n = 3.0 * kk / (a * a * eps * eps);
      break;
    case Protocol::kPrivateIndep:
      n = 0.65 * kk * kk * kk / (g * g * eps * eps);
      break;
    case Protocol::kPublicIndep:
      n = 200.0 * kk / (a * a * eps * eps);
      break;
  }
  return static_cast<std::int64_t>(std::ceil(n));
}

ExperimentConfig DefaultConfig(Protocol protocol, int k, double eps,
                               double rho) {
  ExperimentConfig c;
  c.protocol = protocol;
  c.k = k;
  c.eps = eps;
  c.rho = rho;
  c.public_coin = DefaultPublicCoinParams(protocol);
  c.instance.kind = IsIndependence(protocol) ? InstanceSpec::Kind::kCorrelated
                                             : InstanceSpec::Kind::kPaninski;
  c.n = {DefaultPlayers(protocol, k, eps, rho)};
  return c;
}

void FillDefaultPlayers(ExperimentConfig& c) {
  if (!c.n.empty() || c.k < 2 || !(c.eps > 0.0 && c.eps < 1.0) ||
      !(c.rho > 0.0) || !std::isfinite(c.rho)) {
    return;
  }
  c.n = {DefaultPlayers(c.protocol, c.k, c.eps, c.rho)};
}

absl::Status ValidateConfig(const ExperimentConfig& c) {
  if (c.k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `k` must be at least 2, got ", c.k));
  }
  if (!(c.eps > 0.0 && c.eps < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `eps` must lie in (0, 1), got ", c.eps));
  }
  if (!(c.rho > 0.0) || !std::isfinite(c.rho)) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `rho` must be positive, got ", c.rho));
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `delta` must lie in (0, 1), got ", c.delta));
  }
  if (c.trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("key `trials` must be at least 1, got ", c.trials));
  }
  if (c.n.empty()) {
    return absl::InvalidArgumentError("key `n` must list at least one value");
  }
  for (std::size_t i = 0; i < c.n.size(); ++i) {
    if (i > 0 && c.n[i] <= c.n[i - 1]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "key `n` must be strictly increasing, but ", c.n[i], " follows ",
          c.n[i - 1]));
    }
  }
  if (c.public_coin.repetitions < 1) {
    return absl::InvalidArgumentError("key `t_reps` must be at least 1");
  }
  if (c.threads < 0) {
    return absl::InvalidArgumentError("key `threads` must be non-negative");
  }
  const bool indep = IsIndependence(c.protocol);
  switch (c.instance.kind) {
    case InstanceSpec::Kind::kCorrelated:
      if (!indep) {
        return absl::InvalidArgumentError(
            "instance `correlated` needs an independence protocol");
      }
      break;
    case InstanceSpec::Kind::kHardness:
      if (!indep || c.k % 4 != 0) {
        return absl::InvalidArgumentError(
            "instance `hardness` needs an independence protocol with k "
            "divisible by 4");
      }
      if (3.0 * c.eps > 0.5) {
        return absl::InvalidArgumentError(
            "instance `hardness` needs eps <= 1/6");
      }
      break;
    case InstanceSpec::Kind::kPaninski: {
      const double gamma = c.instance.gamma.value_or(c.eps);
      if (!(gamma >= 0.0 && gamma <= 0.5)) {
        return absl::InvalidArgumentError(
            absl::StrCat("Paninski gamma must lie in [0, 1/2], got ", gamma));
      }
      if (InstanceDomain(c) % 2 != 0) {
        return absl::InvalidArgumentError(
            "instance `paninski` needs an even domain size");
      }
      break;
    }
    case InstanceSpec::Kind::kCustom:
      if (c.instance.mass.size() != static_cast<std::size_t>(InstanceDomain(c))) {
        return absl::InvalidArgumentError(absl::StrCat(
            "custom instance has ", c.instance.mass.size(),
            " masses, expected ", InstanceDomain(c)));
      }
      break;
    case InstanceSpec::Kind::kNull:
      break;
  }
  if (!c.reference.empty() && c.reference.size() != static_cast<std::size_t>(c.k)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "key `reference` has ", c.reference.size(), " masses, expected ",
        c.k));
  }
  if (c.n.front() < MinFeasiblePlayers(c)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n = ", c.n.front(), " is infeasible for ", std::string(ProtocolName(c.protocol)),
        " (needs at least ", MinFeasiblePlayers(c), " players)"));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view json_text,
                                             const std::string& base_dir,
                                             bool validate) {
  Json j;
  try {
    j = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, json_text.size());
    const std::string_view head = json_text.substr(0, pos);
    const auto line = std::count(head.begin(), head.end(), '\n') + 1;
    const auto last_nl = head.rfind('\n');
    const std::size_t col =
        last_nl == std::string_view::npos ? pos : pos - last_nl - 1;
    return absl::InvalidArgumentError(absl::StrCat(
        "malformed JSON at line ", line, ", column ", col, ": ", e.what()));
  }
  if (!j.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  ExperimentConfig c;
  ASSIGN_OR_RETURN(const std::string protocol, Get<std::string>(j, "protocol"));
  ASSIGN_OR_RETURN(c.protocol, ParseProtocol(protocol));
  ASSIGN_OR_RETURN(c.k, Get<int>(j, "k"));
  ASSIGN_OR_RETURN(c.eps, Get<double>(j, "eps"));
  ASSIGN_OR_RETURN(c.rho, Get<double>(j, "rho"));
  c.public_coin = DefaultPublicCoinParams(c.protocol);
  c.instance.kind = IsIndependence(c.protocol) ? InstanceSpec::Kind::kCorrelated
                                               : InstanceSpec::Kind::kPaninski;
  RETURN_IF_ERROR(GetOptional(j, "delta", c.delta));
  RETURN_IF_ERROR(GetOptional(j, "trials", c.trials));
  RETURN_IF_ERROR(GetOptional(j, "seed", c.seed));
  RETURN_IF_ERROR(GetOptional(j, "public_seed", c.public_seed));
  RETURN_IF_ERROR(GetOptional(j, "t_reps", c.public_coin.repetitions));
  RETURN_IF_ERROR(GetOptional(j, "c", c.public_coin.c));
  RETURN_IF_ERROR(GetOptional(j, "delta0", c.public_coin.delta0));
  RETURN_IF_ERROR(GetOptional(j, "threads", c.threads));
  RETURN_IF_ERROR(GetOptional(j, "record_timing", c.record_timing));
  RETURN_IF_ERROR(GetOptional(j, "reference", c.reference));
  if (j.contains("public_seed_policy")) {
    ASSIGN_OR_RETURN(const std::string policy,
                     Get<std::string>(j, "public_seed_policy"));
    ASSIGN_OR_RETURN(c.public_seed_policy, ParseSeedPolicy(policy));
  }
  if (j.contains("n")) {
    const Json& n = j["n"];
    if (n.is_number_integer()) {
      c.n = {n.get<std::int64_t>()};
    } else {
      ASSIGN_OR_RETURN(c.n, Get<std::vector<std::int64_t>>(j, "n"));
    }
  }
  if (j.contains("instance")) {
    const Json& inst = j["instance"];
    std::string kind = "paninski";
    if (inst.is_string()) {
      kind = inst.get<std::string>();
    } else if (inst.is_object()) {
      ASSIGN_OR_RETURN(kind, Get<std::string>(inst, "kind"));
    } else {
      return absl::InvalidArgumentError(
          "key `instance` must be a string or an object");
    }
    if (kind == "null") {
      c.instance.kind = InstanceSpec::Kind::kNull;
    } else if (kind == "paninski") {
      c.instance.kind = InstanceSpec::Kind::kPaninski;
    } else if (kind == "correlated") {
      c.instance.kind = InstanceSpec::Kind::kCorrelated;
    } else if (kind == "hardness") {
      c.instance.kind = InstanceSpec::Kind::kHardness;
    } else if (kind == "custom") {
      c.instance.kind = InstanceSpec::Kind::kCustom;
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "key `instance.kind` has unknown value `", kind, "`"));
    }
    if (inst.is_object()) {
      if (inst.contains("gamma")) {
        ASSIGN_OR_RETURN(c.instance.gamma, Get<double>(inst, "gamma"));
      }
      if (inst.contains("z")) {
        const Json& z = inst["z"];
        if (z.is_string()) {
          const std::string s = z.get<std::string>();
          if (s == "plus") {
            c.instance.signs = InstanceSpec::Signs::kPlus;
          } else if (s == "random") {
            c.instance.signs = InstanceSpec::Signs::kRandom;
          } else {
            return absl::InvalidArgumentError(absl::StrCat(
                "key `instance.z` must be plus, random or a list, got `", s,
                "`"));
          }
        } else {
          c.instance.signs = InstanceSpec::Signs::kExplicit;
          ASSIGN_OR_RETURN(c.instance.z, Get<std::vector<int>>(inst, "z"));
        }
      }
      if (inst.contains("mass")) {
        ASSIGN_OR_RETURN(c.instance.mass,
                         Get<std::vector<double>>(inst, "mass"));
      }
      if (inst.contains("mass_file")) {
        ASSIGN_OR_RETURN(c.instance.mass_file,
                         Get<std::string>(inst, "mass_file"));
        std::filesystem::path path(c.instance.mass_file);
        if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
        ASSIGN_OR_RETURN(c.instance.mass, ReadMassFile(path.string()));
      }
    }
  }
  for (const auto& [key, value] : j.items()) {
    static constexpr std::string_view kKnown[] = {
        "protocol", "k", "eps", "rho", "delta", "n", "trials", "seed",
        "public_seed_policy", "public_seed", "instance", "reference", "t_reps",
        "c", "delta0", "threads", "record_timing"};
    if (std::find(std::begin(kKnown), std::end(kKnown), key) ==
        std::end(kKnown)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key `", key, "`"));
    }
  }
  if (validate) {
    FillDefaultPlayers(c);
    RETURN_IF_ERROR(ValidateConfig(c));
  }
  return c;
}

absl::StatusOr<ExperimentConfig> ReadConfig(const std::string& path,
                                            bool validate) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string dir =
      std::filesystem::path(path).parent_path().string();
  absl::StatusOr<ExperimentConfig> c =
      ParseConfig(buf.str(), dir.empty() ? "." : dir, validate);
  if (!c.ok()) {
    return absl::Status(c.status().code(),
                        absl::StrCat(path, ": ", c.status().message()));
  }
  return c;
}

std::string ConfigToJson(const ExperimentConfig& c) {
  Json j;
  j["protocol"] = std::string(ProtocolName(c.protocol));
  j["k"] = c.k;
  j["eps"] = c.eps;
  j["rho"] = c.rho;
  j["delta"] = c.delta;
  j["n"] = c.n;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["public_seed_policy"] = std::string(SeedPolicyName(c.public_seed_policy));
  j["public_seed"] = c.public_seed;
  j["t_reps"] = c.public_coin.repetitions;
  j["c"] = c.public_coin.c;
  j["delta0"] = c.public_coin.delta0;
  j["threads"] = c.threads;
  j["record_timing"] = c.record_timing;
  if (!c.reference.empty()) j["reference"] = c.reference;
  Json inst;
  switch (c.instance.kind) {
    case InstanceSpec::Kind::kNull: inst["kind"] = "null"; break;
    case InstanceSpec::Kind::kPaninski: inst["kind"] = "paninski"; break;
    case InstanceSpec::Kind::kCorrelated: inst["kind"] = "correlated"; break;
    case InstanceSpec::Kind::kHardness: inst["kind"] = "hardness"; break;
    case InstanceSpec::Kind::kCustom:
      inst["kind"] = "custom";
      inst["mass"] = c.instance.mass;
      break;
  }
  if (c.instance.gamma) inst["gamma"] = *c.instance.gamma;
  if (c.instance.kind == InstanceSpec::Kind::kPaninski ||
      c.instance.kind == InstanceSpec::Kind::kHardness) {
    switch (c.instance.signs) {
      case InstanceSpec::Signs::kPlus: inst["z"] = "plus"; break;
      case InstanceSpec::Signs::kRandom: inst["z"] = "random"; break;
      case InstanceSpec::Signs::kExplicit: inst["z"] = c.instance.z; break;
    }
  }
  j["instance"] = inst;
  return j.dump(2);
}

absl::StatusOr<Instances> BuildInstances(const ExperimentConfig& c) {
  RETURN_IF_ERROR(ValidateConfig(c));
  const int domain = InstanceDomain(c);
  std::optional<Distribution> alt;
  switch (c.instance.kind) {
    case InstanceSpec::Kind::kCustom: {
      ASSIGN_OR_RETURN(alt, Distribution::Create(c.instance.mass));
      break;
    }
    case InstanceSpec::Kind::kCorrelated: {
      std::vector<double> mass(domain, 0.0);
      for (int i = 0; i < c.k; ++i) mass[PairIndex(i, i, c.k)] = 1.0 / c.k;
      ASSIGN_OR_RETURN(alt, Distribution::Create(std::move(mass)));
      break;
    }
    case InstanceSpec::Kind::kPaninski:
    case InstanceSpec::Kind::kHardness: {
      if (c.instance.signs == InstanceSpec::Signs::kRandom) break;
      SignPattern z = SignPattern::AllPlus(SignLength(c));
      if (c.instance.signs == InstanceSpec::Signs::kExplicit) {
        ASSIGN_OR_RETURN(z, SignPattern::Create(c.instance.z));
      }
      ASSIGN_OR_RETURN(alt, AltWithSigns(c, z));
      break;
    }
    case InstanceSpec::Kind::kNull:
      break;
  }
  Distribution reference = Distribution::Uniform(c.k);
  if (!c.reference.empty()) {
    ASSIGN_OR_RETURN(reference, Distribution::Create(c.reference));
  }
  Distribution null_dist = reference;
  if (IsIndependence(c.protocol)) {
    // Every built-in independence alternative has uniform marginals except
    // custom ones; the null is the product of the alternative's marginals.
    null_dist = Distribution::Uniform(domain);
    if (alt) {
      ASSIGN_OR_RETURN(
          const JointDistribution joint,
          JointDistribution::Create(
              c.k, c.k, std::vector<double>(alt->mass().begin(),
                                            alt->mass().end())));
      const auto [p1, p2] = Marginals(joint);
      null_dist = Product(p1, p2).Flatten();
    }
  }
  if (c.instance.kind == InstanceSpec::Kind::kNull) alt = null_dist;
  return Instances{null_dist, reference, alt};
}

absl::StatusOr<TestVerdict> RunProtocol(const ExperimentConfig& c,
                                        const Distribution& reference,
                                        std::span<const int> samples,
                                        std::uint64_t master_seed,
                                        std::uint64_t public_seed) {
  auto once = [&](std::span<const int> s, std::uint64_t ms,
                  std::uint64_t ps) -> absl::StatusOr<TestVerdict> {
    switch (c.protocol) {
      case Protocol::kRapporId:
        return RapporIdentityTest(s, reference, c.eps, c.rho, ms);
      case Protocol::kHrId:
        return HrIdentityTest(s, reference, IdentityGapMode::ExactVsTv(c.eps),
                              c.rho, ms);
      case Protocol::kPublicId:
        return PublicCoinIdentityTest(s, reference, c.eps, c.rho,
                                      PublicSeed{ps}, ms, c.public_coin);
      case Protocol::kPrivateIndep:
        return PrivateCoinIndependenceTest(s, c.k, c.eps, c.rho, ms);
      case Protocol::kPublicIndep:
        return PublicCoinIndependenceTest(s, c.k, c.eps, c.rho,
                                          PublicSeed{ps}, ms, c.public_coin);
    }
    return absl::InternalError("unreachable");
  };
  if (c.delta >= 1.0 / 3.0) return once(samples, master_seed, public_seed);
  return Amplify(samples.size(), c.delta,
                 [&](std::size_t begin, std::size_t end, int rep) {
                   return once(samples.subspan(begin, end - begin),
                               DeriveSeed(master_seed, rep),
                               DeriveSeed(public_seed, rep));
                 });
}

absl::StatusOr<ResultRow> RunPoint(const ExperimentConfig& c, std::int64_t n) {
  ExperimentConfig probe = c;
  probe.n = {n};
  ASSIGN_OR_RETURN(const Instances inst, BuildInstances(probe));
  const Sampler null_sampler(inst.null_dist);
  std::optional<Sampler> alt_sampler;
  if (inst.alt) alt_sampler.emplace(*inst.alt);

  struct Outcome {
    bool null_reject = false;
    bool alt_accept = false;
    absl::Status status;
  };
  std::vector<Outcome> outcomes(c.trials);
  auto run_trial = [&](int t) {
    Outcome& out = outcomes[t];
    const std::uint64_t trial_seed = DeriveSeed(c.seed, t);
    const std::uint64_t master = DeriveSeed(trial_seed, 2);
    const std::uint64_t pub = c.public_seed_policy == SeedPolicy::kFixed
                                  ? c.public_seed
                                  : DeriveSeed(trial_seed, 3);
    std::optional<Sampler> fresh;
    const Sampler* alt = alt_sampler ? &*alt_sampler : nullptr;
    if (alt == nullptr) {
      Stream zs = Stream::Derive(trial_seed, 4);
      absl::StatusOr<Distribution> d =
          AltWithSigns(c, SignPattern::Random(SignLength(c), zs));
      if (!d.ok()) {
        out.status = d.status();
        return;
      }
      fresh.emplace(*d);
      alt = &*fresh;
    }
    // Both hypotheses see the same uniforms and the same player seeds.
    Stream s0 = Stream::Derive(trial_seed, 1);
    Stream s1 = s0;
    const std::vector<int> null_samples = null_sampler.Draw(n, s0);
    absl::StatusOr<TestVerdict> v0 =
        RunProtocol(c, inst.reference, null_samples, master, pub);
    if (!v0.ok()) {
      out.status = v0.status();
      return;
    }
    const std::vector<int> alt_samples = alt->Draw(n, s1);
    absl::StatusOr<TestVerdict> v1 =
        RunProtocol(c, inst.reference, alt_samples, master, pub);
    if (!v1.ok()) {
      out.status = v1.status();
      return;
    }
    out.null_reject = !v0->accept;
    out.alt_accept = v1->accept;
  };

  const auto start = std::chrono::steady_clock::now();
  int threads = c.threads == 0
                    ? static_cast<int>(std::thread::hardware_concurrency())
                    : c.threads;
  threads = std::clamp(threads, 1, c.trials);
  if (threads == 1) {
    for (int t = 0; t < c.trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int t = next++; t < c.trials; t = next++) run_trial(t);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  const auto stop = std::chrono::steady_clock::now();

  int type1 = 0;
  int type2 = 0;
  for (const Outcome& o : outcomes) {
    RETURN_IF_ERROR(o.status);
    type1 += o.null_reject;
    type2 += o.alt_accept;
  }
  ResultRow row;
  row.protocol = std::string(ProtocolName(c.protocol));
  row.k = c.k;
  row.eps = c.eps;
  row.rho = c.rho;
  row.delta = c.delta;
  row.n = n;
  row.trials = c.trials;
  row.seed = c.seed;
  row.public_seed_policy = std::string(SeedPolicyName(c.public_seed_policy));
  row.type1 = static_cast<double>(type1) / c.trials;
  row.type2 = static_cast<double>(type2) / c.trials;
  if (c.record_timing) {
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return row;
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& c) {
  RETURN_IF_ERROR(ValidateConfig(c));
  ExperimentResult result;
  result.config = c;
  for (std::int64_t n : c.n) {
    ASSIGN_OR_RETURN(ResultRow row, RunPoint(c, n));
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::string out = absl::StrCat(std::string(kCsvHeader), "\n");
  for (const ResultRow& r : rows) {
    absl::StrAppend(&out, r.protocol, ",", r.k, ",", FormatDouble(r.eps), ",",
                    FormatDouble(r.rho), ",", FormatDouble(r.delta), ",", r.n,
                    ",", r.trials, ",", r.seed, ",", r.public_seed_policy, ",",
                    FormatDouble(r.type1), ",", FormatDouble(r.type2), ",",
                    FormatDouble(r.wall_ms), "\n");
  }
  return out;
}

absl::Status WriteCsv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << FormatCsv(result.rows);
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> ParseCsv(std::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(
      absl::string_view(text.data(), text.size()), '\n', absl::SkipEmpty());
  if (lines.empty() ||
      lines[0] != absl::string_view(kCsvHeader.data(), kCsvHeader.size())) {
    return absl::InvalidArgumentError("CSV header does not match the schema");
  }
  std::vector<ResultRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::vector<absl::string_view> f = absl::StrSplit(lines[li], ',');
    if (f.size() != 12) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", li + 1, ": expected 12 fields, got ", f.size()));
    }
    ResultRow r;
    bool ok = true;
    auto num = [&](absl::string_view s, auto& v) {
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      ok = ok && res.ec == std::errc() && res.ptr == s.data() + s.size();
    };
    r.protocol = std::string(f[0]);
    num(f[1], r.k);
    num(f[2], r.eps);
    num(f[3], r.rho);
    num(f[4], r.delta);
    num(f[5], r.n);
    num(f[6], r.trials);
    num(f[7], r.seed);
    r.public_seed_policy = std::string(f[8]);
    num(f[9], r.type1);
    num(f[10], r.type2);
    num(f[11], r.wall_ms);
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", li + 1, ": malformed numeric field"));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

absl::StatusOr<ResultRow> FindMinPlayers(const ExperimentConfig& c,
                                         const SearchOptions& o) {
  const std::int64_t floor_n = MinFeasiblePlayers(c);
  auto eval = [&](std::int64_t n) -> absl::StatusOr<ResultRow> {
    return RunPoint(c, std::max(n, floor_n));
  };
  auto good = [&](const ResultRow& r) {
    return std::max(r.type1, r.type2) <= o.target;
  };
  std::int64_t start = o.start > 0
                           ? o.start
                           : DefaultPlayers(c.protocol, c.k, c.eps, c.rho) / 8;
  start = std::max(start, floor_n);
  ASSIGN_OR_RETURN(ResultRow row, eval(start));
  std::int64_t lo = 0;   // largest n known to fail
  std::int64_t hi = 0;   // smallest n known to pass
  ResultRow best;
  if (good(row)) {
    hi = start;
    best = row;
    while (hi > floor_n) {
      const std::int64_t probe = std::max(hi / 2, floor_n);
      ASSIGN_OR_RETURN(ResultRow r, eval(probe));
      if (!good(r)) {
        lo = probe;
        break;
      }
      hi = probe;
      best = r;
    }
    if (lo == 0) return best;
  } else {
    lo = start;
    for (;;) {
      const std::int64_t probe = lo * 2;
      if (probe > o.max_players) {
        return absl::ResourceExhaustedError(absl::StrCat(
            "no n up to ", o.max_players, " reaches error ", o.target, " for ",
            std::string(ProtocolName(c.protocol)), " at k = ", c.k));
      }
      ASSIGN_OR_RETURN(ResultRow r, eval(probe));
      if (good(r)) {
        hi = probe;
        best = r;
        break;
      }
      lo = probe;
    }
  }
  while (static_cast<double>(hi) / static_cast<double>(lo) - 1.0 >
         o.resolution) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (mid == lo) break;
    ASSIGN_OR_RETURN(ResultRow r, eval(mid));
    if (good(r)) {
      hi = mid;
      best = r;
    } else {
      lo = mid;
    }
  }
  return best;
}

}  // namespace ldpt
