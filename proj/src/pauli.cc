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

#include "baconshor/pauli.h"

#include <bit>
#include <stdexcept>

namespace baconshor {

namespace {

void check_num_qubits(int n) {
    if (n < 0 || n > kMaxQubits) {
        throw std::invalid_argument("Pauli strings are limited to " + std::to_string(kMaxQubits) + " qubits.");
    }
}

bool bit(uint32_t mask, int q) {
    return (mask >> q) & 1u;
}

// Exponent of i picked up when multiplying single-qubit Paulis (x1,z1)·(x2,z2).
int log_i_product(bool x1, bool z1, bool x2, bool z2) {
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

PauliString::PauliString(int num_qubits) : num_qubits_(num_qubits) {
    check_num_qubits(num_qubits);
}

PauliString::PauliString(bool negative, std::span<const Pauli> letters)
    : num_qubits_((int)letters.size()), negative_(negative) {
    check_num_qubits(num_qubits_);
    for (int q = 0; q < num_qubits_; q++) {
        set(q, letters[q]);
    }
}

PauliString PauliString::from_masks(int num_qubits, bool negative, uint32_t xs, uint32_t zs) {
    PauliString result(num_qubits);
    uint32_t valid = (1u << num_qubits) - 1;
    if ((xs | zs) & ~valid) {
        throw std::invalid_argument("Pauli mask has bits outside the register.");
    }
    result.negative_ = negative;
    result.xs_ = xs;
    result.zs_ = zs;
    return result;
}

PauliString PauliString::from_str(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::vector<Pauli> letters;
    for (char c : text) {
        switch (c) {
            case 'I':
            case '_':
                letters.push_back(Pauli::I);
                break;
            case 'X':
                letters.push_back(Pauli::X);
                break;
            case 'Y':
                letters.push_back(Pauli::Y);
                break;
            case 'Z':
                letters.push_back(Pauli::Z);
                break;
            default:
                throw std::invalid_argument("Not a Pauli string: '" + std::string(text) + "'.");
        }
    }
    return PauliString(negative, letters);
}

std::string PauliString::str() const {
    std::string result(1, negative_ ? '-' : '+');
    for (int q = 0; q < num_qubits_; q++) {
        result.push_back("IXZY"[(int)(*this)[q]]);
    }
    return result;
}

Pauli PauliString::operator[](int q) const {
    return static_cast<Pauli>(int(bit(xs_, q)) | (int(bit(zs_, q)) << 1));
}

int PauliString::weight() const {
    return std::popcount(xs_ | zs_);
}

void PauliString::set(int q, Pauli p) {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range("Qubit index out of range.");
    }
    uint32_t m = 1u << q;
    xs_ = ((int)p & 1) ? (xs_ | m) : (xs_ & ~m);
    zs_ = ((int)p & 2) ? (zs_ | m) : (zs_ & ~m);
}

PauliString PauliString::negated() const {
    PauliString result = *this;
    result.negative_ = !negative_;
    return result;
}

PauliString PauliString::unsigned_copy() const {
    PauliString result = *this;
    result.negative_ = false;
    return result;
}

PauliString multiply(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw std::invalid_argument("Pauli length mismatch: " + p.str() + " * " + q.str());
    }
    int log_i = 0;
    for (int k = 0; k < p.num_qubits(); k++) {
        log_i += log_i_product(bit(p.xs(), k), bit(p.zs(), k), bit(q.xs(), k), bit(q.zs(), k));
    }
    log_i &= 3;
    if (log_i & 1) {
        throw std::domain_error("Product " + p.str() + " * " + q.str() + " is not Hermitian.");
    }
    bool negative = p.negative() ^ q.negative() ^ (log_i == 2);
    return PauliString::from_masks(p.num_qubits(), negative, p.xs() ^ q.xs(), p.zs() ^ q.zs());
}

bool commutes(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw std::invalid_argument("Pauli length mismatch: " + p.str() + " vs " + q.str());
    }
    return (std::popcount((p.xs() & q.zs()) ^ (p.zs() & q.xs())) & 1) == 0;
}

Gate Gate::relabel(std::vector<int> permutation) {
    std::vector<bool> seen(permutation.size(), false);
    for (int v : permutation) {
        if (v < 0 || v >= (int)permutation.size() || seen[v]) {
            throw std::invalid_argument("QubitRelabel requires a permutation.");
        }
        seen[v] = true;
    }
    return {GateKind::QubitRelabel, std::move(permutation)};
}

Gate Gate::swap_labels(int num_qubits, int a, int b) {
    std::vector<int> perm(num_qubits);
    for (int q = 0; q < num_qubits; q++) {
        perm[q] = q;
    }
    std::swap(perm.at(a), perm.at(b));
    return relabel(std::move(perm));
}

int Gate::noisy_arity() const {
    return kind == GateKind::QubitRelabel ? 0 : (int)targets.size();
}

std::string Gate::str() const {
    std::string result;
    switch (kind) {
        case GateKind::H:
            result = "H";
            break;
        case GateKind::X:
            result = "X";
            break;
        case GateKind::Z:
            result = "Z";
            break;
        case GateKind::CNOT:
            result = "CNOT";
            break;
        case GateKind::QubitRelabel:
            result = "RELABEL";
            break;
    }
    for (int t : targets) {
        result += " " + std::to_string(t);
    }
    return result;
}

PauliString conjugate_by_gate(const PauliString &p, const Gate &g) {
    int n = p.num_qubits();
    for (int t : g.targets) {
        if (t < 0 || t >= n) {
            throw std::out_of_range("Gate target outside the Pauli string: " + g.str());
        }
    }
    uint32_t xs = p.xs();
    uint32_t zs = p.zs();
    bool negative = p.negative();
    switch (g.kind) {
        case GateKind::H: {
            int q = g.targets[0];
            bool x = bit(xs, q), z = bit(zs, q);
            negative ^= x && z;
            uint32_t m = 1u << q;
            xs = (xs & ~m) | (z ? m : 0);
            zs = (zs & ~m) | (x ? m : 0);
            break;
        }
        case GateKind::X:
            negative ^= bit(zs, g.targets[0]);
            break;
        case GateKind::Z:
            negative ^= bit(xs, g.targets[0]);
            break;
        case GateKind::CNOT: {
            int c = g.targets[0], t = g.targets[1];
            bool xc = bit(xs, c), zc = bit(zs, c), xt = bit(xs, t), zt = bit(zs, t);
            negative ^= xc && zt && !(xt ^ zc);
            if (xc) {
                xs ^= 1u << t;
            }
            if (zt) {
                zs ^= 1u << c;
            }
            break;
        }
        case GateKind::QubitRelabel: {
            if ((int)g.targets.size() != n) {
                throw std::invalid_argument("Relabel permutation size does not match the Pauli string.");
            }
            uint32_t nx = 0, nz = 0;
            for (int q = 0; q < n; q++) {
                nx |= uint32_t(bit(xs, q)) << g.targets[q];
                nz |= uint32_t(bit(zs, q)) << g.targets[q];
            }
            xs = nx;
            zs = nz;
            break;
        }
        default:
            throw std::invalid_argument("Unsupported gate kind.");
    }
    return PauliString::from_masks(n, negative, xs, zs);
}

PauliString conjugate_by_gates(PauliString p, std::span<const Gate> gates) {
    for (const auto &g : gates) {
        p = conjugate_by_gate(p, g);
    }
    return p;
}

}  // namespace baconshor
