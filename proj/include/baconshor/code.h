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
#include <utility>
#include <vector>

#include "baconshor/circuit.h"
#include "baconshor/pauli.h"

namespace baconshor {

inline constexpr int kNumDataQubits = 4;
inline constexpr int kAncillaQubit = 4;
inline constexpr int kNumQubits = 5;

enum class LogicalGate : uint8_t { X, Z, H };

std::string logical_gate_name(LogicalGate g);

// Code operators on the four data qubits.
PauliString logical_x();  // XIXI
PauliString logical_z();  // ZZII
std::array<PauliString, 4> gauge_generators();  // XXII, IIXX, ZIZI, IZIZ
std::array<PauliString, 2> stabilizer_generators();  // XXXX, ZZZZ

/// The four gauge measurements in their default order within a round.
std::vector<std::string> default_round_order();

/// Post-selection rule: every listed pair of round outcomes must multiply to +1, and optionally the
/// final readout must have even ZZZZ parity.
struct AcceptanceRule {
    std::vector<std::pair<std::string, std::string>> pairs{{"XXII", "IIXX"}, {"ZIZI", "IZIZ"}};
    bool final_parity_check = true;
};

/// |+>|000> followed by CNOT(0->2), CNOT(0->1), CNOT(2->3); prepares (|0000>+|1111>)/sqrt2.
PhysicalCircuit prep_circuit();

/// One gauge measurement on the ancilla; `label` is one of XXII, IIXX, ZIZI, IZIZ.
PhysicalCircuit gauge_measurement_circuit(const std::string &label);

/// All four gauge measurements wrapped in round markers. 8 CNOTs, 18 noise sites.
PhysicalCircuit syndrome_round_circuit(std::span<const std::string> order);
PhysicalCircuit syndrome_round_circuit();

/// Transversal compilation: X_L -> X0 X2, Z_L -> Z0 Z1, H_L -> H on all data qubits then swap labels 1,2.
PhysicalCircuit compile_logical(LogicalGate g);

/// Decodes four destructive Z-basis readout bits (bit q of `bits` is qubit q). Returns the logical bit,
/// or nullopt when the parity check is on and ZZZZ = -1.
std::optional<int> decode_z_readout(uint32_t bits, bool final_parity_check = true);

enum class MeasurementBasis : uint8_t { Z, X };

struct ScheduleFlags {
    bool round_after_prep = false;
    bool final_round = true;
    std::vector<std::string> round_order = default_round_order();
};

/// prep, logical gates with a syndrome round after every `gap` gates, a final round, readout.
///
/// For an X-basis readout a noisy H_L is inserted after the last logical gate and before the final
/// round. A round the gap schedule would place after the last gate is merged with the final one.
PhysicalCircuit assemble_encoded_circuit(std::span<const LogicalGate> logical_seq, int gap,
                                         const ScheduleFlags &flags = {},
                                         MeasurementBasis basis = MeasurementBasis::Z);

/// Number of syndrome rounds assemble_encoded_circuit places for a depth/gap pair.
int count_scheduled_rounds(int depth, int gap, const ScheduleFlags &flags = {});

}  // namespace baconshor
