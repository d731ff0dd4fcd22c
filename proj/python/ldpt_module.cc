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

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpt/channels.h"
#include "ldpt/distribution.h"
#include "ldpt/experiment.h"
#include "ldpt/hadamard.h"
#include "ldpt/identity.h"
#include "ldpt/independence.h"
#include "ldpt/reduction.h"
#include "ldpt/verify.h"
#include "pybind11/pybind11.h"
#include "pybind11/stl.h"

namespace py = pybind11;

namespace {

template <typename T>
T Unwrap(absl::StatusOr<T> v) {
  if (!v.ok()) throw py::value_error(std::string(v.status().message()));
  return *std::move(v);
}

ldpt::Distribution Dist(std::vector<double> mass) {
  return Unwrap(ldpt::Distribution::Create(std::move(mass)));
}

std::vector<double> Mass(const ldpt::Distribution& d) {
  return {d.mass().begin(), d.mass().end()};
}

py::dict RowDict(const ldpt::ResultRow& r) {
  py::dict d;
  d["protocol"] = r.protocol;
  d["k"] = r.k;
  d["eps"] = r.eps;
  d["rho"] = r.rho;
  d["delta"] = r.delta;
  d["n"] = r.n;
  d["trials"] = r.trials;
  d["seed"] = r.seed;
  d["public_seed_policy"] = r.public_seed_policy;
  d["type1"] = r.type1;
  d["type2"] = r.type2;
  d["wall_ms"] = r.wall_ms;
  return d;
}

ldpt::Channel MakeChannel(const std::string& mechanism, double rho, int k,
                          std::vector<int> members) {
  if (mechanism == "rappor") return Unwrap(ldpt::RapporChannel(k, rho));
  if (mechanism == "rr") return Unwrap(ldpt::RrBinaryChannel(rho));
  if (mechanism == "subset") {
    return Unwrap(ldpt::SubsetThenRr(ldpt::IndexSet::FromMembers(k, members), rho));
  }
  if (mechanism == "hr") {
    const int j = members.empty() ? 0 : members.front();
    const ldpt::HadamardSpec spec = ldpt::ColumnSets(k);
    if (j < 0 || j >= spec.order) throw py::value_error("column out of range");
    return Unwrap(ldpt::HrBitChannel(spec.column_sets[j], k, rho));
  }
  throw py::value_error("mechanism must be rappor, hr, rr or subset");
}

}  // namespace

PYBIND11_MODULE(_ldpt, m) {
  m.doc() = "LDP identity and independence testing core";

  m.def("tv_distance",
        [](std::vector<double> p, std::vector<double> q) {
          return Unwrap(ldpt::TvDistance(Dist(std::move(p)), Dist(std::move(q))));
        },
        py::arg("p"), py::arg("q"));
  m.def("l2_distance_sq",
        [](std::vector<double> p, std::vector<double> q) {
          return Unwrap(ldpt::L2DistanceSq(Dist(std::move(p)), Dist(std::move(q))));
        },
        py::arg("p"), py::arg("q"));
  m.def("paninski",
        [](int k_sq, double gamma, std::vector<int> z) {
          const ldpt::SignPattern signs =
              z.empty() ? ldpt::SignPattern::AllPlus(k_sq / 2)
                        : Unwrap(ldpt::SignPattern::Create(std::move(z)));
          return Mass(Unwrap(ldpt::Paninski(k_sq, gamma, signs)));
        },
        py::arg("k_sq"), py::arg("gamma"), py::arg("z") = std::vector<int>{});
  m.def("sample",
        [](std::vector<double> p, std::size_t n, std::uint64_t seed) {
          ldpt::Stream s(seed);
          return ldpt::Sample(Dist(std::move(p)), n, s);
        },
        py::arg("p"), py::arg("n"), py::arg("seed"));
  m.def("hadamard_order", &ldpt::HadamardOrder, py::arg("k"));

  m.def("ldp_ratio",
        [](const std::string& mechanism, double rho, int k,
           std::vector<int> members) {
          return Unwrap(ldpt::LdpRatio(MakeChannel(mechanism, rho, k, std::move(members))));
        },
        py::arg("mechanism"), py::arg("rho"), py::arg("k"),
        py::arg("members") = std::vector<int>{});
  m.def("rappor_params",
        [](double rho) {
          const ldpt::RapporParams p = Unwrap(ldpt::RapporParams::FromRho(rho));
          py::dict d;
          d["alpha"] = p.alpha;
          d["beta"] = p.beta;
          d["flip"] = p.flip;
          return d;
        },
        py::arg("rho"));

  py::class_<ldpt::TestVerdict>(m, "TestVerdict")
      .def_readonly("accept", &ldpt::TestVerdict::accept)
      .def_readonly("statistic", &ldpt::TestVerdict::statistic)
      .def_readonly("threshold", &ldpt::TestVerdict::threshold)
      .def_readonly("n_used", &ldpt::TestVerdict::n_used)
      .def("__repr__", [](const ldpt::TestVerdict& v) {
        return std::string("TestVerdict(accept=") + (v.accept ? "True" : "False") +
               ", statistic=" + std::to_string(v.statistic) +
               ", threshold=" + std::to_string(v.threshold) + ")";
      });

  m.def("rappor_identity_test",
        [](std::vector<int> samples, std::vector<double> q, double eps,
           double rho, std::uint64_t seed) {
          return Unwrap(ldpt::RapporIdentityTest(samples, Dist(std::move(q)), eps, rho, seed));
        },
        py::arg("samples"), py::arg("q"), py::arg("eps"), py::arg("rho"),
        py::arg("seed"));
  m.def("hr_identity_test",
        [](std::vector<int> samples, std::vector<double> q, double eps,
           double rho, std::uint64_t seed) {
          return Unwrap(ldpt::HrIdentityTest(samples, Dist(std::move(q)),
                                             ldpt::IdentityGapMode::ExactVsTv(eps),
                                             rho, seed));
        },
        py::arg("samples"), py::arg("q"), py::arg("eps"), py::arg("rho"),
        py::arg("seed"));
  m.def("public_coin_identity_test",
        [](std::vector<int> samples, std::vector<double> q, double eps,
           double rho, std::uint64_t public_seed, std::uint64_t seed,
           int t_reps) {
          ldpt::PublicCoinParams params =
              ldpt::DefaultPublicCoinParams(ldpt::Protocol::kPublicId);
          params.repetitions = t_reps;
          return Unwrap(ldpt::PublicCoinIdentityTest(
              samples, Dist(std::move(q)), eps, rho, ldpt::PublicSeed{public_seed},
              seed, params));
        },
        py::arg("samples"), py::arg("q"), py::arg("eps"), py::arg("rho"),
        py::arg("public_seed"), py::arg("seed"), py::arg("t_reps") = 1);
  m.def("private_coin_independence_test",
        [](std::vector<int> pairs, int k, double eps, double rho,
           std::uint64_t seed) {
          return Unwrap(ldpt::PrivateCoinIndependenceTest(pairs, k, eps, rho, seed));
        },
        py::arg("pairs"), py::arg("k"), py::arg("eps"), py::arg("rho"),
        py::arg("seed"));
  m.def("phi_map",
        [](std::vector<double> p, int k) {
          const ldpt::JointDistribution j =
              Unwrap(ldpt::PhiMap(Dist(std::move(p)), k));
          return std::vector<double>(j.mass().begin(), j.mass().end());
        },
        py::arg("p"), py::arg("k"));

  m.attr("CSV_HEADER") = std::string(ldpt::kCsvHeader);
  m.def("default_players",
        [](const std::string& protocol, int k, double eps, double rho) {
          return ldpt::DefaultPlayers(Unwrap(ldpt::ParseProtocol(protocol)), k,
                                      eps, rho);
        },
        py::arg("protocol"), py::arg("k"), py::arg("eps"), py::arg("rho"));
  m.def("run_experiment",
        [](const std::string& config_json) {
          const ldpt::ExperimentConfig c = Unwrap(ldpt::ParseConfig(config_json));
          ldpt::ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = Unwrap(ldpt::RunExperiment(c));
          }
          py::list rows;
          for (const ldpt::ResultRow& row : r.rows) rows.append(RowDict(row));
          return rows;
        },
        py::arg("config_json"));
  m.def("run_experiment_csv",
        [](const std::string& config_json) {
          const ldpt::ExperimentConfig c = Unwrap(ldpt::ParseConfig(config_json));
          py::gil_scoped_release release;
          return ldpt::FormatCsv(Unwrap(ldpt::RunExperiment(c)).rows);
        },
        py::arg("config_json"));
  m.def("verify",
        [](const std::string& level, const std::string& group) {
          ldpt::VerifyLevel lv;
          if (level == "quick") {
            lv = ldpt::VerifyLevel::kQuick;
          } else if (level == "full") {
            lv = ldpt::VerifyLevel::kFull;
          } else {
            throw py::value_error("level must be quick or full");
          }
          ldpt::VerifyReport r;
          {
            py::gil_scoped_release release;
            r = group.empty() ? ldpt::VerifySuite(lv) : ldpt::VerifyGroup(group, lv);
          }
          py::list out;
          for (const ldpt::CheckResult& c : r.checks) {
            py::dict d;
            d["name"] = c.name;
            d["group"] = c.group;
            d["passed"] = c.passed;
            d["measured"] = c.measured;
            d["bound"] = c.bound;
            d["tolerance"] = c.tolerance;
            d["seconds"] = c.seconds;
            d["detail"] = c.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("level") = "quick", py::arg("group") = "");
}
