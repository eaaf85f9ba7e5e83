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
#include <span>
#include <string>
#include <vector>

#include "baconshor/code.h"
#include "baconshor/density.h"
#include "baconshor/distribution.h"
#include "baconshor/rng.h"

namespace baconshor {

enum class EngineKind : uint8_t { DensityMatrix, Stabilizer };
enum class Weighting : uint8_t { RatioOfMeans, MeanOfRatios };

std::string engine_name(EngineKind engine);
std::string weighting_name(Weighting weighting);

/// Policy for the automatically chosen physical-error grid (used when ExperimentConfig::p_grid is empty).
///
/// A coarse pilot scan locates the crossing p_hat; the sweep grid is then `points` geometrically spaced
/// values in [max(floor, p_hat / span), min(ceiling, p_hat * span)].
struct AutoGridPolicy {
    int pilot_points = 5;
    double pilot_min = 5e-4;
    double pilot_max = 0.15;
    int refine_steps = 4;  // log-bisections of the pilot bracket
    int points = 12;
    double span = 1.25;
    double floor = 1e-4;
    double ceiling = 0.15;
};

struct ExperimentConfig {
    std::vector<int> depths{1, 2, 5, 10, 20, 30, 40, 48, 60, 84, 100};
    std::vector<int> gaps{1, 2, 5, 10, 15, 20, 25, 50, 100};
    std::vector<double> p_grid;  // empty: automatic per (depth, gap)
    int n_circuits = 200;
    uint64_t seed = 1;
    ScheduleFlags schedule;
    bool final_parity_check = true;
    EngineKind engine = EngineKind::DensityMatrix;
    int64_t n_trajectories = 20000;
    Weighting weighting = Weighting::RatioOfMeans;
    AutoGridPolicy grid;
    int workers = 0;  // 0: one per available processor

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    AcceptanceRule rule() const;
};

struct SweepPoint {
    int depth = 0;
    int gap = 0;
    double p = 0.0;
    double mean_delta_l = 0.0;
    double mean_p_ps = 0.0;
    double mean_delta_s = 0.0;
    double weighted = 0.0;
    int n_circuits = 0;
};

enum class FitStatus : uint8_t { Ok, NoCrossing };

struct ThresholdEstimate {
    int depth = 0;
    int gap = 0;
    std::optional<double> threshold;
    std::array<double, 3> quadratic{0, 0, 0};  // q2, q1, q0 of the weighted encoded metric
    std::array<double, 2> linear{0, 0};        // l1, l0 of the bare distance
    double residual_q = 0.0;                   // RMS residuals
    double residual_l = 0.0;
    std::vector<double> roots;  // all real roots of q - l, ascending
    FitStatus status = FitStatus::NoCrossing;
};

/// depth gates drawn i.i.d. uniformly from {X_L, Z_L, H_L}.
std::vector<LogicalGate> sample_logical_circuit(int depth, Rng &rng);

/// The circuit sample for one depth: circuit k draws from derive_stream(seed, {tag, depth, k}).
std::vector<std::vector<LogicalGate>> draw_circuits(int depth, int n_circuits, uint64_t seed);

/// Noiseless outcome of a logical sequence applied to |0>: the basis in which the final state is an
/// eigenstate and the eigenvalue bit there.
struct TrueOutput {
    MeasurementBasis basis = MeasurementBasis::Z;
    int bit = 0;
    Distribution2 distribution() const { return point_mass(bit); }
    bool operator==(const TrueOutput &) const = default;
};
TrueOutput true_output(std::span<const LogicalGate> logical_seq);

/// Single-qubit noisy run (one depolarizing site after every gate, including the basis-change H) and its
/// total variation distance from the true distribution.
double run_bare(std::span<const LogicalGate> logical_seq, const NoiseModel &noise, const TrueOutput &truth);

struct EncodedSample {
    double delta_l = 0.0;
    double p_ps = 0.0;
};

/// One encoded logical circuit at one noise level on the configured engine. `stream` seeds the
/// stabilizer engine and is ignored by the density-matrix engine.
EncodedSample run_encoded_sample(const ExperimentConfig &config, std::span<const LogicalGate> logical_seq, int gap,
                                 double p, uint64_t stream);

/// Gap values actually swept for a depth: the configured gaps below the depth, plus the depth itself when
/// some configured gap reaches it (all such gaps give the same single terminal round).
std::vector<int> effective_gaps(int depth, std::span<const int> gaps);

/// Averages over `circuits` at each p. Throws std::runtime_error naming (depth, gap, p, circuit) if an
/// engine fails.
std::vector<SweepPoint> evaluate_points(const ExperimentConfig &config, int depth, int gap,
                                        std::span<const double> ps,
                                        const std::vector<std::vector<LogicalGate>> &circuits);

/// Mean acceptance probability of the circuit sample at one p.
double mean_p_ps(const ExperimentConfig &config, int depth, int gap, double p,
                 const std::vector<std::vector<LogicalGate>> &circuits);

/// Least-squares quadratic through (p, weighted) and affine line through (p, mean_delta_s); the threshold
/// is the smallest crossing inside the swept range. Needs at least four points.
ThresholdEstimate fit_threshold(std::span<const SweepPoint> points);

struct GridChoice {
    std::vector<double> grid;
    double pilot_estimate = 0.0;
    std::vector<double> dropped;  // grid points where post-selection rejected everything
    std::vector<SweepPoint> points;  // evaluations at `grid`
};

/// Pilot scan plus the automatic grid around its crossing estimate.
GridChoice choose_grid(const ExperimentConfig &config, int depth, int gap,
                       const std::vector<std::vector<LogicalGate>> &circuits);

struct SweepCell {
    int depth = 0;
    int gap = 0;
    GridChoice grid;
    std::vector<SweepPoint> points;
    ThresholdEstimate threshold;
    std::optional<double> p_ps_at_threshold;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<SweepPoint> points() const;
    std::vector<ThresholdEstimate> thresholds() const;
};

SweepResult sweep(const ExperimentConfig &config);

}  // namespace baconshor
