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

#include <string>
#include <variant>
#include <vector>

#include "baconshor/pauli.h"

namespace baconshor {

struct NoiseSite {
    int qubit;
    bool operator==(const NoiseSite &) const = default;
};

enum class PrepBasis : uint8_t { Zero, Plus };

/// Noiseless (re)initialization of one qubit; any previous content of the qubit is discarded.
struct AncillaPrep {
    int qubit;
    PrepBasis basis;
    bool operator==(const AncillaPrep &) const = default;
};

/// Noiseless computational-basis measurement whose outcome is recorded under `label`.
struct AncillaMeasure {
    int qubit;
    std::string label;
    bool operator==(const AncillaMeasure &) const = default;
};

enum class MarkerKind : uint8_t { NoiselessBegin, NoiselessEnd, RoundBegin, RoundEnd };

/// Structural annotation. Noiseless regions may contain no NoiseSite; syndrome-round markers scope
/// measurement labels so the acceptance rule can be evaluated per round.
struct Marker {
    MarkerKind kind;
    bool operator==(const Marker &) const = default;
};

/// Noiseless destructive computational-basis measurement of the four data qubits.
struct Readout {
    bool operator==(const Readout &) const = default;
};

using CircuitItem = std::variant<Gate, NoiseSite, AncillaPrep, AncillaMeasure, Marker, Readout>;

/// Executable circuit IR shared by both engines.
struct PhysicalCircuit {
    int num_qubits = 0;
    std::vector<CircuitItem> items;

    void append(CircuitItem item) { items.push_back(std::move(item)); }
    void append(const PhysicalCircuit &other);

    /// Appends g followed by one NoiseSite per acted qubit (none for a relabel).
    void append_noisy(const Gate &g);

    int count_noise_sites() const;
    int count_gates(GateKind kind) const;
    int count_measurements() const;
    int count_rounds() const;

    /// Just the Gate items, in order.
    std::vector<Gate> gates() const;

    /// One item per line; see README for the grammar.
    std::string str() const;
    static PhysicalCircuit from_str(const std::string &text);

    /// Throws std::invalid_argument if the noise-placement rule or label uniqueness is violated.
    void validate() const;

    bool operator==(const PhysicalCircuit &) const = default;
};

std::string item_str(const CircuitItem &item);

}  // namespace baconshor
