# Copyright 2026 The baconshor Authors
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

"""Four-qubit Bacon-Shor error-detection simulator."""

from baconshor._core import (
    FullyRejected,
    PauliString,
    PhysicalCircuit,
    draw_circuits,
    encoded_circuit,
    estimate,
    fit_threshold,
    logical_success_bound,
    optimal_gap,
    pairs,
    prep_circuit,
    ps_bound,
    run_bare,
    run_checks,
    run_encoded,
    sitecount_threshold,
    sweep,
    syndrome_round_circuit,
    true_output,
    unencoded_success,
)

__version__ = "0.1.0"

__all__ = [
    "FullyRejected",
    "PauliString",
    "PhysicalCircuit",
    "draw_circuits",
    "encoded_circuit",
    "estimate",
    "fit_threshold",
    "logical_success_bound",
    "optimal_gap",
    "pairs",
    "prep_circuit",
    "ps_bound",
    "run_bare",
    "run_checks",
    "run_encoded",
    "sitecount_threshold",
    "sweep",
    "syndrome_round_circuit",
    "true_output",
    "unencoded_success",
]
