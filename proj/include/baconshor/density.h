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

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "baconshor/circuit.h"
#include "baconshor/code.h"
#include "baconshor/distribution.h"

namespace baconshor {

/// Depolarizing strength: each noise site applies X, Y or Z with probability p/3 each.
struct NoiseModel {
    double p = 0.0;

    explicit NoiseModel(double p_ = 0.0) : p(p_) {
        if (!(p_ >= 0.0 && p_ <= 0.75)) {
            throw std::invalid_argument("Depolarizing probability must lie in [0, 3/4].");
        }
    }
};

/// Possibly sub-normalized density matrix on up to five qubits. Qubit q is bit q of a basis index.
class DensityState {
   public:
    using Scalar = std::complex<double>;

    /// |0...0><0...0|.
    explicit DensityState(int num_qubits);
    static DensityState from_amplitudes(std::span<const Scalar> amplitudes);

    int num_qubits() const { return num_qubits_; }
    size_t dim() const { return dim_; }
    Scalar &at(size_t row, size_t col) { return data_[row * dim_ + col]; }
    const Scalar &at(size_t row, size_t col) const { return data_[row * dim_ + col]; }

    double trace() const;
    /// max |rho - rho^dagger| over entries.
    double hermiticity_error() const;
    double max_abs_diff(const DensityState &other) const;
    /// Diagonal of rho (unnormalized basis-state weights).
    std::vector<double> diagonal() const;

    void apply_gate(const Gate &g);
    void apply_pauli(int q, Pauli p);
    void apply_depolarizing(int q, double p);
    /// Trace out qubit q and replace it with |0> or |+>.
    void reset(int q, PrepBasis basis);
    /// Unnormalized projection of qubit q onto |outcome>.
    DensityState project(int q, int outcome) const;

    DensityState &operator+=(const DensityState &other);
    DensityState &operator*=(double s);

   private:
    void check_qubit(int q) const;
    void permute_basis(std::span<const uint32_t> image);

    int num_qubits_;
    size_t dim_;
    std::vector<Scalar> data_;
};

DensityState apply_gate(DensityState state, const Gate &g);
DensityState apply_depolarizing(DensityState state, int qubit, const NoiseModel &noise);

struct MeasurementBranch {
    int outcome;  // +1 or -1
    DensityState state;
};
/// Splits on a computational-basis measurement of qubit q (the ancilla by default).
std::vector<MeasurementBranch> measure_ancilla_branches(const DensityState &state, int q = kAncillaQubit);

/// Unnormalized outcome of an exact run: accepted weight and its split over the decoded logical bit.
struct ReadoutWeights {
    double accepted = 0.0;
    Distribution2 logical{0.0, 0.0};
};

struct EncodedRunResult {
    double p_ps = 0.0;
    Distribution2 logical{0.0, 0.0};
    double delta_l = 0.0;
};

/// Thrown when post-selection removes (numerically) all weight.
class FullyRejected : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Exact execution with per-pair filtering and merging of accepted measurement branches.
///
/// The circuit must end with a Readout. Never throws on full rejection; see run_encoded.
ReadoutWeights execute_density(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule);

/// execute_density normalized to a conditional logical distribution and compared with `truth`.
EncodedRunResult run_encoded(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule,
                             const Distribution2 &truth);

}  // namespace baconshor
