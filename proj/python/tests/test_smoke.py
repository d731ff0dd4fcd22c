# Copyright 2026 The LDPT Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import ldpt


def test_distances():
    assert ldpt.tv_distance([0.5, 0.5], [0.75, 0.25]) == pytest.approx(0.25)
    assert ldpt.l2_distance_sq([1, 0], [0, 1]) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        ldpt.tv_distance([1.0], [0.5, 0.5])


def test_paninski_and_phi():
    p = ldpt.paninski(4, 0.25)
    assert p == pytest.approx([0.125, 0.375, 0.125, 0.375])
    joint = ldpt.phi_map([0.25] * 4, 2)
    assert joint == pytest.approx([1 / 16] * 16)


def test_ldp_ratio():
    for mech in ("rappor", "rr", "hr"):
        assert ldpt.ldp_ratio(mech, 1.0, 4, [1]) == pytest.approx(math.e, rel=1e-12)
    params = ldpt.rappor_params(2.0)
    assert params["alpha"] == pytest.approx(0.462117, abs=1e-6)
    with pytest.raises(ValueError):
        ldpt.ldp_ratio("rappor", 1.0, 30)


def test_testers_run():
    samples = ldpt.sample([0.25] * 4, 400, 3)
    v = ldpt.rappor_identity_test(samples, [0.25] * 4, 0.5, 1.0, 7)
    assert v.accept == (v.statistic < v.threshold)
    v = ldpt.hr_identity_test(samples, [0.25] * 4, 0.5, 1.0, 7)
    assert v.n_used <= 400
    v = ldpt.public_coin_identity_test(samples, [0.25] * 4, 0.5, 1.0, 1, 2)
    assert isinstance(v.accept, bool)


def test_experiment_is_deterministic():
    config = {"protocol": "rappor-id", "k": 4, "eps": 0.5, "rho": 1.0,
              "n": [200, 400], "trials": 20, "seed": 5}
    a = ldpt.run_experiment(config)
    b = ldpt.run_experiment(config)
    assert a == b
    assert [row["n"] for row in a] == [200, 400]
    import json
    csv = ldpt.run_experiment_csv(json.dumps(config))
    assert csv.splitlines()[0] == ldpt.CSV_HEADER
    with pytest.raises(ValueError):
        ldpt.run_experiment({"protocol": "rappor-id", "k": 4, "eps": 0.5})


def test_verify_group():
    checks = ldpt.verify("quick", "hadamard")
    assert checks and all(c["passed"] for c in checks)
