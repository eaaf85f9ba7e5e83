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
#include <functional>
#include <vector>

#include "baconshor/circuit.h"
#include "baconshor/pauli.h"

namespace baconshor {

/// Aaronson-Gottesman stabilizer tableau (destabilizers and stabilizers with sign bits) on up to
/// five qubits, starting in |0...0>.
class Tableau {
   public:
    explicit Tableau(int num_qubits);

    int num_qubits() const { return n_; }

    void apply_gate(const Gate &g);
    void apply_pauli(int q, Pauli p);

    bool is_deterministic(int q) const;
    /// Z-basis measurement. `random_bit` is consulted only when the outcome is random. Returns 0 or 1.
    int measure(int q, const std::function<int()> &random_bit);
    void reset(int q, PrepBasis basis, const std::function<int()> &random_bit);

    /// +1 / -1 when the state is an eigenstate of the (unsigned part of the) Pauli, 0 otherwise.
    int expectation(const PauliString &p) const;
    PauliString stabilizer(int k) const;

   private:
    struct Row {
        uint32_t x = 0;
        uint32_t z = 0;
        bool r = false;
    };
    void rowsum(Row &h, const Row &i) const;
    void hadamard(int q);
    void cnot(int c, int t);

    int n_;
    std::vector<Row> rows_;  // [0, n) destabilizers, [n, 2n) stabilizers
};

}  // namespace baconshor
