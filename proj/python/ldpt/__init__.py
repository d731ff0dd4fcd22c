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
"""Python bindings for the LDP identity and independence testing core."""

import json

from ._ldpt import (
    CSV_HEADER,
    TestVerdict,
    default_players,
    hadamard_order,
    hr_identity_test,
    l2_distance_sq,
    ldp_ratio,
    paninski,
    phi_map,
    private_coin_independence_test,
    public_coin_identity_test,
    rappor_identity_test,
    rappor_params,
    run_experiment_csv,
    sample,
    tv_distance,
    verify,
)
from . import _ldpt

__all__ = [
    "CSV_HEADER",
    "TestVerdict",
    "default_players",
    "hadamard_order",
    "hr_identity_test",
    "l2_distance_sq",
    "ldp_ratio",
    "paninski",
    "phi_map",
    "private_coin_independence_test",
    "public_coin_identity_test",
    "rappor_identity_test",
    "rappor_params",
    "run_experiment",
    "run_experiment_csv",
    "sample",
    "tv_distance",
    "verify",
]


def run_experiment(config):
    """Runs an experiment given a config dict or JSON string; returns rows."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return _ldpt.run_experiment(config)
