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

#include "baconshor/density.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <variant>

namespace baconshor {

namespace {

constexpr double kFullyRejectedWeight = 1e-12;

std::vector<DensityState::Scalar> &scratch(size_t n) {
    thread_local std::vector<DensityState::Scalar> buffer;
    buffer.resize(n);
    return buffer;
}

}  // namespace

DensityState::DensityState(int num_qubits)
    : num_qubits_(num_qubits), dim_(size_t{1} << num_qubits), data_(dim_ * dim_, Scalar{0.0, 0.0}) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("DensityState supports 1 to 5 qubits.");
    }
    data_[0] = 1.0;
}

DensityState DensityState::from_amplitudes(std::span<const Scalar> amplitudes) {
    int n = 0;
    while ((size_t{1} << n) < amplitudes.size()) {
        n++;
    }
    if ((size_t{1} << n) != amplitudes.size()) {
        throw std::invalid_argument("Amplitude vector length must be a power of two.");
    }
    DensityState result(n);
    for (size_t r = 0; r < result.dim_; r++) {
        for (size_t c = 0; c < result.dim_; c++) {
            result.at(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
        }
    }
    return result;
}

void DensityState::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range("Qubit " + std::to_string(q) + " outside the density matrix.");
    }
}

double DensityState::trace() const {
    double t = 0;
    for (size_t k = 0; k < dim_; k++) {
        t += at(k, k).real();
    }
    return t;
}

double DensityState::hermiticity_error() const {
    double worst = 0;
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = r; c < dim_; c++) {
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    return worst;
}

double DensityState::max_abs_diff(const DensityState &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Density matrices differ in size.");
    }
    double worst = 0;
    for (size_t k = 0; k < data_.size(); k++) {
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    }
    return worst;
}

std::vector<double> DensityState::diagonal() const {
    std::vector<double> d(dim_);
    for (size_t k = 0; k < dim_; k++) {
        d[k] = at(k, k).real();
    }
    return d;
}

void DensityState::permute_basis(std::span<const uint32_t> image) {
    auto &out = scratch(data_.size());
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            out[image[r] * dim_ + image[c]] = data_[r * dim_ + c];
        }
    }
    std::copy(out.begin(), out.end(), data_.begin());
}

void DensityState::apply_gate(const Gate &g) {
    for (int t : g.targets) {
        check_qubit(t);
    }
    switch (g.kind) {
        case GateKind::H: {
            size_t m = size_t{1} << g.targets[0];
            const double s = M_SQRT1_2;
            for (size_t r = 0; r < dim_; r++) {
                if (r & m) {
                    continue;
                }
                Scalar *a = &data_[r * dim_];
                Scalar *b = &data_[(r | m) * dim_];
                for (size_t c = 0; c < dim_; c++) {
                    Scalar u = a[c], v = b[c];
                    a[c] = (u + v) * s;
                    b[c] = (u - v) * s;
                }
            }
            for (size_t r = 0; r < dim_; r++) {
                Scalar *row = &data_[r * dim_];
                for (size_t c = 0; c < dim_; c++) {
                    if (c & m) {
                        continue;
                    }
                    Scalar u = row[c], v = row[c | m];
                    row[c] = (u + v) * s;
                    row[c | m] = (u - v) * s;
                }
            }
            return;
        }
        case GateKind::X:
            apply_pauli(g.targets[0], Pauli::X);
            return;
        case GateKind::Z:
            apply_pauli(g.targets[0], Pauli::Z);
            return;
        case GateKind::CNOT: {
            if (g.targets[0] == g.targets[1]) {
                throw std::invalid_argument("CNOT control and target coincide.");
            }
            uint32_t cm = 1u << g.targets[0], tm = 1u << g.targets[1];
            std::vector<uint32_t> image(dim_);
            for (uint32_t i = 0; i < dim_; i++) {
                image[i] = (i & cm) ? (i ^ tm) : i;
            }
            permute_basis(image);
            return;
        }
        case GateKind::QubitRelabel: {
            if ((int)g.targets.size() != num_qubits_) {
                throw std::invalid_argument("Relabel must permute the whole register.");
            }
            std::vector<uint32_t> image(dim_);
            for (uint32_t i = 0; i < dim_; i++) {
                uint32_t j = 0;
                for (int q = 0; q < num_qubits_; q++) {
                    j |= ((i >> q) & 1u) << g.targets[q];
                }
                image[i] = j;
            }
            permute_basis(image);
            return;
        }
    }
    throw std::invalid_argument("Unsupported gate.");
}

void DensityState::apply_pauli(int q, Pauli p) {
    check_qubit(q);
    size_t m = size_t{1} << q;
    bool flip = p == Pauli::X || p == Pauli::Y;
    bool phase = p == Pauli::Z || p == Pauli::Y;
    if (phase) {
        for (size_t r = 0; r < dim_; r++) {
            for (size_t c = 0; c < dim_; c++) {
                if (((r ^ c) & m) != 0) {
                    at(r, c) = -at(r, c);
                }
            }
        }
    }
    if (flip) {
        for (size_t r = 0; r < dim_; r++) {
            if (r & m) {
                continue;
            }
            for (size_t c = 0; c < dim_; c++) {
                std::swap(at(r, c), at(r | m, c ^ m));
            }
        }
    }
}

void DensityState::apply_depolarizing(int q, double p) {
    check_qubit(q);
    if (!(p >= 0.0 && p <= 0.75)) {
        throw std::invalid_argument("Depolarizing probability must lie in [0, 3/4].");
    }
    if (p == 0.0) {
        return;
    }
    // Diagonal blocks mix with weight 2p/3; off-diagonal blocks shrink by 1 - 4p/3.
    const double keep = 1.0 - 2.0 * p / 3.0;
    const double move = 2.0 * p / 3.0;
    const double shrink = 1.0 - 4.0 * p / 3.0;
    size_t m = size_t{1} << q;
    for (size_t r = 0; r < dim_; r++) {
        if (r & m) {
            continue;
        }
        Scalar *r0 = &data_[r * dim_];
        Scalar *r1 = &data_[(r | m) * dim_];
        for (size_t c = 0; c < dim_; c++) {
            if (c & m) {
                continue;
            }
            Scalar a00 = r0[c], a11 = r1[c | m];
            r0[c] = keep * a00 + move * a11;
            r1[c | m] = keep * a11 + move * a00;
            r0[c | m] *= shrink;
            r1[c] *= shrink;
        }
    }
}

void DensityState::reset(int q, PrepBasis basis) {
    check_qubit(q);
    size_t m = size_t{1} << q;
    for (size_t r = 0; r < dim_; r++) {
        if (r & m) {
            continue;
        }
        Scalar *r0 = &data_[r * dim_];
        Scalar *r1 = &data_[(r | m) * dim_];
        for (size_t c = 0; c < dim_; c++) {
            if (c & m) {
                continue;
            }
            Scalar reduced = r0[c] + r1[c | m];
            if (basis == PrepBasis::Zero) {
                r0[c] = reduced;
                r0[c | m] = 0;
                r1[c] = 0;
                r1[c | m] = 0;
            } else {
                Scalar half = 0.5 * reduced;
                r0[c] = half;
                r0[c | m] = half;
                r1[c] = half;
                r1[c | m] = half;
            }
        }
    }
}

DensityState DensityState::project(int q, int outcome) const {
    check_qubit(q);
    DensityState result = *this;
    size_t m = size_t{1} << q;
    size_t want = outcome ? m : 0;
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            if ((r & m) != want || (c & m) != want) {
                result.at(r, c) = 0;
            }
        }
    }
    return result;
}

DensityState &DensityState::operator+=(const DensityState &other) {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Density matrices differ in size.");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

DensityState &DensityState::operator*=(double s) {
    for (auto &v : data_) {
        v *= s;
    }
    return *this;
}

DensityState apply_gate(DensityState state, const Gate &g) {
    state.apply_gate(g);
    return state;
}

DensityState apply_depolarizing(DensityState state, int qubit, const NoiseModel &noise) {
    state.apply_depolarizing(qubit, noise.p);
    return state;
}

std::vector<MeasurementBranch> measure_ancilla_branches(const DensityState &state, int q) {
    return {{+1, state.project(q, 0)}, {-1, state.project(q, 1)}};
}

namespace {

struct Branch {
    DensityState rho;
    // Outcomes (0 for +1, 1 for -1) of measurements whose acceptance pair is still open.
    std::map<std::string, int> open;
};

// Applies every acceptance pair that just became decidable, drops violating branches, then merges
// branches whose open records coincide.
void settle(std::vector<Branch> &branches, const AcceptanceRule &rule) {
    std::vector<Branch> kept;
    for (auto &b : branches) {
        bool ok = true;
        for (const auto &[a, c] : rule.pairs) {
            auto ia = b.open.find(a);
            auto ic = b.open.find(c);
            if (ia == b.open.end() || ic == b.open.end()) {
                continue;
            }
            if (ia->second != ic->second) {
                ok = false;
                break;
            }
            b.open.erase(ia);
            b.open.erase(ic);
        }
        if (ok) {
            kept.push_back(std::move(b));
        }
    }
    std::vector<Branch> merged;
    for (auto &b : kept) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Branch &m) { return m.open == b.open; });
        if (it == merged.end()) {
            merged.push_back(std::move(b));
        } else {
            it->rho += b.rho;
        }
    }
    branches = std::move(merged);
}

}  // namespace

ReadoutWeights execute_density(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule) {
    std::vector<Branch> branches;
    branches.push_back({DensityState(circuit.num_qubits), {}});
    ReadoutWeights weights;
    bool read_out = false;

    for (const auto &item : circuit.items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            for (auto &b : branches) {
                b.rho.apply_gate(*g);
            }
        } else if (const auto *n = std::get_if<NoiseSite>(&item)) {
            for (auto &b : branches) {
                b.rho.apply_depolarizing(n->qubit, noise.p);
            }
        } else if (const auto *prep = std::get_if<AncillaPrep>(&item)) {
            for (auto &b : branches) {
                b.rho.reset(prep->qubit, prep->basis);
            }
        } else if (const auto *meas = std::get_if<AncillaMeasure>(&item)) {
            std::vector<Branch> next;
            next.reserve(branches.size() * 2);
            for (auto &b : branches) {
                for (int outcome = 0; outcome < 2; outcome++) {
                    Branch child{b.rho.project(meas->qubit, outcome), b.open};
                    if (child.rho.trace() <= 0.0) {
                        continue;
                    }
                    child.open[meas->label] = outcome;
                    next.push_back(std::move(child));
                }
            }
            branches = std::move(next);
            settle(branches, rule);
        } else if (const auto *mk = std::get_if<Marker>(&item)) {
            if (mk->kind == MarkerKind::RoundEnd) {
                // Labels are scoped to their round; anything left open is unconstrained.
                for (auto &b : branches) {
                    b.open.clear();
                }
                settle(branches, rule);
            }
        } else if (std::holds_alternative<Readout>(item)) {
            for (const auto &b : branches) {
                auto diag = b.rho.diagonal();
                for (uint32_t idx = 0; idx < diag.size(); idx++) {
                    auto bit = decode_z_readout(idx & 0xF, rule.final_parity_check);
                    if (bit) {
                        weights.accepted += diag[idx];
                        weights.logical[*bit] += diag[idx];
                    }
                }
            }
            read_out = true;
        }
        if (branches.empty()) {
            break;
        }
    }
    if (!read_out && !branches.empty()) {
        throw std::invalid_argument("Circuit has no Readout.");
    }
    return weights;
}

EncodedRunResult run_encoded(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule,
                             const Distribution2 &truth) {
    auto weights = execute_density(circuit, noise, rule);
    if (weights.accepted < kFullyRejectedWeight) {
        throw FullyRejected("All runs rejected by post-selection (acceptance weight " +
                            std::to_string(weights.accepted) + ").");
    }
    EncodedRunResult result;
    result.p_ps = weights.accepted;
    result.logical = {weights.logical[0] / weights.accepted, weights.logical[1] / weights.accepted};
    result.delta_l = tvd(result.logical, truth);
    return result;
}

}  // namespace baconshor
