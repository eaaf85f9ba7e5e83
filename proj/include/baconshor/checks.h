// Copyright 2026 The baconshor Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baconshor/circuit.h"
#include "baconshor/code.h"
#include "baconshor/density.h"

namespace baconshor {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Appends a noiseless Pauli on qubit q (Y as X then Z), wrapped in its own noiseless region.
void inject_pauli(PhysicalCircuit &circuit, int q, Pauli p);

/// Density-matrix execution that keeps every measurement branch and applies the acceptance rule only at
/// readout. Exponential in the number of measurements; meant as a cross-check for execute_density.
ReadoutWeights execute_density_exhaustive(const PhysicalCircuit &circuit, const NoiseModel &noise,
                                          const AcceptanceRule &rule);

CheckResult check_gauge_center();
CheckResult check_weight_one_detection();
CheckResult check_prep_faults();
CheckResult check_gauge_invariance(uint64_t seed);
CheckResult check_full_depolarization();
CheckResult check_noiseless_end_to_end(uint64_t seed);
CheckResult check_branch_merge(uint64_t seed);
CheckResult check_cross_engine(int64_t n_trajectories, int n_configs, uint64_t seed, int workers);
CheckResult check_sitecount_bisection(uint64_t seed);

struct ValidateOptions {
    int64_t n_trajectories = 1000;
    int n_configs = 20;
    uint64_t seed = 1;
    int workers = 0;
};

std::vector<CheckResult> run_all_checks(const ValidateOptions &options);

}  // namespace baconshor
