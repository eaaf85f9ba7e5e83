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

#include "baconshor/code.h"

#include <algorithm>
#include <stdexcept>

namespace baconshor {

std::string logical_gate_name(LogicalGate g) {
    switch (g) {
        case LogicalGate::X:
            return "X_L";
        case LogicalGate::Z:
            return "Z_L";
        case LogicalGate::H:
            return "H_L";
    }
    return "?";
}

PauliString logical_x() {
    return PauliString::from_str("+XIXI");
}

PauliString logical_z() {
    return PauliString::from_str("+ZZII");
}

std::array<PauliString, 4> gauge_generators() {
    return {PauliString::from_str("+XXII"), PauliString::from_str("+IIXX"), PauliString::from_str("+ZIZI"),
            PauliString::from_str("+IZIZ")};
}

std::array<PauliString, 2> stabilizer_generators() {
    return {PauliString::from_str("+XXXX"), PauliString::from_str("+ZZZZ")};
}

std::vector<std::string> default_round_order() {
    return {"XXII", "IIXX", "ZIZI", "IZIZ"};
}

PhysicalCircuit prep_circuit() {
    PhysicalCircuit c;
    c.num_qubits = kNumQubits;
    c.append(Marker{MarkerKind::NoiselessBegin});
    c.append(AncillaPrep{0, PrepBasis::Plus});
    c.append(AncillaPrep{1, PrepBasis::Zero});
    c.append(AncillaPrep{2, PrepBasis::Zero});
    c.append(AncillaPrep{3, PrepBasis::Zero});
    c.append(Marker{MarkerKind::NoiselessEnd});
    c.append_noisy(Gate::cnot(0, 2));
    c.append_noisy(Gate::cnot(0, 1));
    c.append_noisy(Gate::cnot(2, 3));
    return c;
}

PhysicalCircuit gauge_measurement_circuit(const std::string &label) {
    auto op = PauliString::from_str(label);
    if (op.num_qubits() != kNumDataQubits || op.weight() != 2) {
        throw std::invalid_argument("Not a two-qubit gauge operator: " + label);
    }
    bool x_type = op.zs() == 0;
    bool z_type = op.xs() == 0;
    if (!x_type && !z_type) {
        throw std::invalid_argument("Gauge operator must be X-type or Z-type: " + label);
    }
    std::vector<int> support;
    for (int q = 0; q < kNumDataQubits; q++) {
        if (op[q] != Pauli::I) {
            support.push_back(q);
        }
    }
    PhysicalCircuit c;
    c.num_qubits = kNumQubits;
    c.append(AncillaPrep{kAncillaQubit, x_type ? PrepBasis::Plus : PrepBasis::Zero});
    for (int q : support) {
        c.append_noisy(x_type ? Gate::cnot(kAncillaQubit, q) : Gate::cnot(q, kAncillaQubit));
    }
    if (x_type) {
        c.append_noisy(Gate::h(kAncillaQubit));
    }
    c.append(AncillaMeasure{kAncillaQubit, label});
    return c;
}

PhysicalCircuit syndrome_round_circuit(std::span<const std::string> order) {
    PhysicalCircuit c;
    c.num_qubits = kNumQubits;
    c.append(Marker{MarkerKind::RoundBegin});
    for (const auto &label : order) {
        c.append(gauge_measurement_circuit(label));
    }
    c.append(Marker{MarkerKind::RoundEnd});
    return c;
}

PhysicalCircuit syndrome_round_circuit() {
    auto order = default_round_order();
    return syndrome_round_circuit(order);
}

PhysicalCircuit compile_logical(LogicalGate g) {
    PhysicalCircuit c;
    c.num_qubits = kNumQubits;
    switch (g) {
        case LogicalGate::X:
            c.append_noisy(Gate::x(0));
            c.append_noisy(Gate::x(2));
            break;
        case LogicalGate::Z:
            c.append_noisy(Gate::z(0));
            c.append_noisy(Gate::z(1));
            break;
        case LogicalGate::H:
            for (int q = 0; q < kNumDataQubits; q++) {
                c.append_noisy(Gate::h(q));
            }
            c.append_noisy(Gate::swap_labels(kNumQubits, 1, 2));
            break;
    }
    return c;
}

std::optional<int> decode_z_readout(uint32_t bits, bool final_parity_check) {
    int b0 = bits & 1, b1 = (bits >> 1) & 1, b2 = (bits >> 2) & 1, b3 = (bits >> 3) & 1;
    if (final_parity_check && (b0 ^ b1 ^ b2 ^ b3)) {
        return std::nullopt;
    }
    return b0 ^ b1;
}

int count_scheduled_rounds(int depth, int gap, const ScheduleFlags &flags) {
    if (gap < 1) {
        throw std::invalid_argument("gap must be at least 1.");
    }
    int rounds = flags.round_after_prep ? 1 : 0;
    if (depth > 0) {
        rounds += (depth - 1) / gap;
    }
    if (flags.final_round) {
        rounds += 1;
    }
    return rounds;
}

PhysicalCircuit assemble_encoded_circuit(std::span<const LogicalGate> logical_seq, int gap,
                                         const ScheduleFlags &flags, MeasurementBasis basis) {
    int depth = (int)logical_seq.size();
    if (count_scheduled_rounds(depth, gap, flags) == 0 && depth == 0) {
        throw std::invalid_argument("Empty logical sequence with no syndrome rounds requested.");
    }
    auto round = syndrome_round_circuit(flags.round_order);
    PhysicalCircuit c = prep_circuit();
    if (flags.round_after_prep) {
        c.append(round);
    }
    for (int k = 0; k < depth; k++) {
        c.append(compile_logical(logical_seq[k]));
        int done = k + 1;
        if (done % gap == 0 && done < depth) {
            c.append(round);
        }
    }
    if (basis == MeasurementBasis::X) {
        c.append(compile_logical(LogicalGate::H));
    }
    if (flags.final_round) {
        c.append(round);
    }
    c.append(Marker{MarkerKind::NoiselessBegin});
    c.append(Readout{});
    c.append(Marker{MarkerKind::NoiselessEnd});
    return c;
}

}  // namespace baconshor
