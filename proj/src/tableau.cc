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

#include "baconshor/tableau.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace baconshor {

namespace {

bool anticommute(uint32_t x1, uint32_t z1, uint32_t x2, uint32_t z2) {
    return std::popcount((x1 & z2) ^ (z1 & x2)) & 1;
}

int g(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) {
        return 0;
    }
    if (x1 && z1) {
        return int(z2) - int(x2);
    }
    if (x1) {
        return int(z2) * (2 * int(x2) - 1);
    }
    return int(x2) * (1 - 2 * int(z2));
}

}  // namespace

Tableau::Tableau(int num_qubits) : n_(num_qubits), rows_(2 * num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Tableau supports 1 to 5 qubits.");
    }
    for (int q = 0; q < n_; q++) {
        rows_[q].x = 1u << q;
        rows_[q + n_].z = 1u << q;
    }
}

void Tableau::rowsum(Row &h, const Row &i) const {
    int e = 2 * int(h.r) + 2 * int(i.r);
    for (int j = 0; j < n_; j++) {
        e += g((i.x >> j) & 1, (i.z >> j) & 1, (h.x >> j) & 1, (h.z >> j) & 1);
    }
    e = ((e % 4) + 4) % 4;
    h.r = e == 2;
    h.x ^= i.x;
    h.z ^= i.z;
}

void Tableau::hadamard(int q) {
    uint32_t m = 1u << q;
    for (auto &row : rows_) {
        bool x = row.x & m, z = row.z & m;
        row.r ^= x && z;
        row.x = (row.x & ~m) | (z ? m : 0);
        row.z = (row.z & ~m) | (x ? m : 0);
    }
}

void Tableau::cnot(int c, int t) {
    uint32_t cm = 1u << c, tm = 1u << t;
    for (auto &row : rows_) {
        bool xc = row.x & cm, zc = row.z & cm, xt = row.x & tm, zt = row.z & tm;
        row.r ^= xc && zt && !(xt ^ zc);
        if (xc) {
            row.x ^= tm;
        }
        if (zt) {
            row.z ^= cm;
        }
    }
}

void Tableau::apply_pauli(int q, Pauli p) {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("Qubit outside the tableau.");
    }
    uint32_t m = 1u << q;
    for (auto &row : rows_) {
        bool x = row.x & m, z = row.z & m;
        switch (p) {
            case Pauli::I:
                break;
            case Pauli::X:
                row.r ^= z;
                break;
            case Pauli::Z:
                row.r ^= x;
                break;
            case Pauli::Y:
                row.r ^= x ^ z;
                break;
        }
    }
}

void Tableau::apply_gate(const Gate &gate) {
    for (int t : gate.targets) {
        if (t < 0 || t >= n_) {
            throw std::out_of_range("Gate target outside the tableau: " + gate.str());
        }
    }
    switch (gate.kind) {
        case GateKind::H:
            hadamard(gate.targets[0]);
            return;
        case GateKind::X:
            apply_pauli(gate.targets[0], Pauli::X);
            return;
        case GateKind::Z:
            apply_pauli(gate.targets[0], Pauli::Z);
            return;
        case GateKind::CNOT:
            cnot(gate.targets[0], gate.targets[1]);
            return;
        case GateKind::QubitRelabel: {
            if ((int)gate.targets.size() != n_) {
                throw std::invalid_argument("Relabel must permute the whole register.");
            }
            for (auto &row : rows_) {
                uint32_t nx = 0, nz = 0;
                for (int q = 0; q < n_; q++) {
                    nx |= ((row.x >> q) & 1u) << gate.targets[q];
                    nz |= ((row.z >> q) & 1u) << gate.targets[q];
                }
                row.x = nx;
                row.z = nz;
            }
            return;
        }
    }
    throw std::invalid_argument("Non-Clifford or unknown gate in tableau simulation.");
}

bool Tableau::is_deterministic(int q) const {
    uint32_t m = 1u << q;
    for (int i = n_; i < 2 * n_; i++) {
        if (rows_[i].x & m) {
            return false;
        }
    }
    return true;
}

int Tableau::measure(int q, const std::function<int()> &random_bit) {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("Qubit outside the tableau.");
    }
    uint32_t m = 1u << q;
    int p = -1;
    for (int i = n_; i < 2 * n_; i++) {
        if (rows_[i].x & m) {
            p = i;
            break;
        }
    }
    if (p >= 0) {
        for (int i = 0; i < 2 * n_; i++) {
            if (i != p && (rows_[i].x & m)) {
                rowsum(rows_[i], rows_[p]);
            }
        }
        rows_[p - n_] = rows_[p];
        int outcome = random_bit() & 1;
        rows_[p] = Row{0, m, outcome == 1};
        return outcome;
    }
    Row scratch;
    for (int i = 0; i < n_; i++) {
        if (rows_[i].x & m) {
            rowsum(scratch, rows_[i + n_]);
        }
    }
    return scratch.r ? 1 : 0;
}

void Tableau::reset(int q, PrepBasis basis, const std::function<int()> &random_bit) {
    if (measure(q, random_bit)) {
        apply_pauli(q, Pauli::X);
    }
    if (basis == PrepBasis::Plus) {
        hadamard(q);
    }
}

int Tableau::expectation(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size does not match the tableau.");
    }
    for (int i = n_; i < 2 * n_; i++) {
        if (anticommute(rows_[i].x, rows_[i].z, p.xs(), p.zs())) {
            return 0;
        }
    }
    Row scratch;
    for (int i = 0; i < n_; i++) {
        if (anticommute(rows_[i].x, rows_[i].z, p.xs(), p.zs())) {
            rowsum(scratch, rows_[i + n_]);
        }
    }
    if (scratch.x != p.xs() || scratch.z != p.zs()) {
        throw std::logic_error("Tableau lost symplectic independence.");
    }
    return scratch.r == p.negative() ? +1 : -1;
}

PauliString Tableau::stabilizer(int k) const {
    const Row &row = rows_.at(n_ + k);
    return PauliString::from_masks(n_, row.r, row.x, row.z);
}

}  // namespace baconshor
