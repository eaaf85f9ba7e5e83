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

#include <array>
#include <cstdint>
#include <optional>

#include "baconshor/circuit.h"
#include "baconshor/code.h"
#include "baconshor/density.h"
#include "baconshor/distribution.h"
#include "baconshor/rng.h"

namespace baconshor {

struct TrajectoryOutcome {
    bool accepted = false;
    int logical_bit = 0;  // meaningful only when accepted
};

struct TrajectoryOptions {
    /// Also track a noiseless reference tableau plus the propagated Pauli error frame, and check every
    /// deterministic measurement against reference XOR frame. Throws std::logic_error on disagreement.
    bool frame_self_check = false;
};

/// With probability p returns a uniformly chosen X, Y or Z; otherwise nullopt.
std::optional<Pauli> sample_depolarizing_fault(double p, Rng &rng);

/// One Monte-Carlo trajectory: sampled depolarizing faults, tableau simulation, rejection at the first
/// violated acceptance pair, decoded readout.
TrajectoryOutcome run_trajectory(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule,
                                 Rng &rng, const TrajectoryOptions &options = {});

struct TrajectoryTally {
    int64_t n_total = 0;
    int64_t n_accepted = 0;
    std::array<int64_t, 2> counts{0, 0};

    void add(const TrajectoryOutcome &outcome);
    TrajectoryTally &operator+=(const TrajectoryTally &other);
    bool operator==(const TrajectoryTally &) const = default;

    bool degenerate() const { return n_accepted == 0; }
    double p_ps() const;
    double p_ps_stderr() const;
    /// Conditional logical distribution over accepted trajectories ({0.5, 0.5} when degenerate).
    Distribution2 conditional() const;
    double conditional_stderr() const;
};

/// Aggregates n_trajectories trajectories; trajectory k draws from derive_stream(master_seed, {tag, k}), so
/// the tally does not depend on `workers`.
TrajectoryTally estimate(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule,
                         int64_t n_trajectories, uint64_t master_seed, int workers = 1,
                         const TrajectoryOptions &options = {});

}  // namespace baconshor
