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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace baconshor {

/// Largest register handled anywhere in the library: four data qubits plus one ancilla.
inline constexpr int kMaxQubits = 5;

enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

/// A Pauli operator on at most five qubits carrying a real sign.
///
/// Letters are stored as symplectic bit masks: bit q of `xs` / `zs` is set when the letter on qubit q
/// has an X / Z component (Y has both). Products whose phase would be imaginary are rejected, because
/// every operator the code touches is Hermitian.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(int num_qubits);
    PauliString(bool negative, std::span<const Pauli> letters);

    /// Parses "+XIXI", "-ZZII" or an unsigned "XXII". '_' is accepted as identity.
    static PauliString from_str(std::string_view text);

    /// Canonical text form with explicit sign, e.g. "+XIXI".
    std::string str() const;

    int num_qubits() const { return num_qubits_; }
    bool negative() const { return negative_; }
    int sign() const { return negative_ ? -1 : +1; }
    uint32_t xs() const { return xs_; }
    uint32_t zs() const { return zs_; }
    Pauli operator[](int q) const;
    int weight() const;
    bool is_identity() const { return xs_ == 0 && zs_ == 0; }

    void set(int q, Pauli p);
    PauliString negated() const;
    PauliString unsigned_copy() const;

    bool operator==(const PauliString &other) const = default;

    static PauliString from_masks(int num_qubits, bool negative, uint32_t xs, uint32_t zs);

   private:
    int num_qubits_ = 0;
    bool negative_ = false;
    uint32_t xs_ = 0;
    uint32_t zs_ = 0;
};

/// Signed product p·q. Throws std::invalid_argument on a length mismatch and std::domain_error if the
/// product carries an imaginary phase.
PauliString multiply(const PauliString &p, const PauliString &q);
inline PauliString operator*(const PauliString &p, const PauliString &q) {
    return multiply(p, q);
}

/// True iff p and q commute (even number of positions with distinct non-identity letters).
bool commutes(const PauliString &p, const PauliString &q);

enum class GateKind : uint8_t { H, X, Z, CNOT, QubitRelabel };

/// A located Clifford gate.
///
/// For CNOT, targets = {control, target}. For QubitRelabel, targets is a permutation: the qubit
/// labelled i before the relabel carries label targets[i] afterwards. A relabel is bookkeeping only
/// and never carries noise.
struct Gate {
    GateKind kind;
    std::vector<int> targets;

    static Gate h(int q) { return {GateKind::H, {q}}; }
    static Gate x(int q) { return {GateKind::X, {q}}; }
    static Gate z(int q) { return {GateKind::Z, {q}}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
    static Gate relabel(std::vector<int> permutation);
    static Gate swap_labels(int num_qubits, int a, int b);

    /// Number of qubits whose outputs receive a noise site (0 for a relabel).
    int noisy_arity() const;
    std::string str() const;

    bool operator==(const Gate &other) const = default;
};

/// g·p·g† for a Clifford gate g.
PauliString conjugate_by_gate(const PauliString &p, const Gate &g);

/// Conjugates by each gate in order (the first gate acts first).
PauliString conjugate_by_gates(PauliString p, std::span<const Gate> gates);

}  // namespace baconshor
