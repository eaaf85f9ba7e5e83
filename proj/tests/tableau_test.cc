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

#include <doctest.h>

#include <random>

#include "baconshor/code.h"
#include "baconshor/tableau.h"
#include "oracle.h"

using namespace baconshor;

namespace {

int fixed_bit() {
    return 0;
}

// <psi| P |psi> from the dense oracle.
double dense_expectation(const Eigen::VectorXcd &psi, const PauliString &p) {
    return (psi.adjoint() * oracle::pauli_string_matrix(p) * psi)(0, 0).real();
}

}  // namespace

TEST_CASE("fresh tableau stabilized by Z on every qubit") {
    Tableau t(3);
    for (int q = 0; q < 3; q++) {
        PauliString z(3);
        z.set(q, Pauli::Z);
        CHECK(t.expectation(z) == +1);
        CHECK(t.is_deterministic(q));
    }
    CHECK(t.expectation(PauliString::from_str("XII")) == 0);
}

TEST_CASE("bell pair") {
    Tableau t(2);
    t.apply_gate(Gate::h(0));
    t.apply_gate(Gate::cnot(0, 1));
    CHECK(t.expectation(PauliString::from_str("XX")) == +1);
    CHECK(t.expectation(PauliString::from_str("ZZ")) == +1);
    CHECK(t.expectation(PauliString::from_str("YY")) == -1);
    CHECK_FALSE(t.is_deterministic(0));
    int first = t.measure(0, [] { return 1; });
    CHECK(first == 1);
    CHECK(t.is_deterministic(1));
    CHECK(t.measure(1, fixed_bit) == 1);
}

TEST_CASE("logical zero") {
    Tableau t(5);
    auto prep = prep_circuit();
    for (const auto &item : prep.items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            t.apply_gate(*g);
        } else if (const auto *pr = std::get_if<AncillaPrep>(&item)) {
            t.reset(pr->qubit, pr->basis, fixed_bit);
        }
    }
    CHECK(t.expectation(PauliString::from_str("XXXXI")) == +1);
    CHECK(t.expectation(PauliString::from_str("ZZZZI")) == +1);
    CHECK(t.expectation(PauliString::from_str("ZZIII")) == +1);
    CHECK(t.expectation(PauliString::from_str("XXIII")) == 0);
}

TEST_CASE("expectations match the dense oracle on random Clifford circuits") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> pick(0, 4), qubit(0, 3);
    for (int trial = 0; trial < 20; trial++) {
        Tableau t(4);
        PhysicalCircuit c;
        c.num_qubits = 4;
        for (int k = 0; k < 25; k++) {
            int a = qubit(rng), b = (a + 1 + qubit(rng) % 3) % 4;
            Gate g = Gate::h(a);
            switch (pick(rng)) {
                case 0:
                    g = Gate::h(a);
                    break;
                case 1:
                    g = Gate::x(a);
                    break;
                case 2:
                    g = Gate::z(a);
                    break;
                case 3:
                    g = Gate::cnot(a, b);
                    break;
                case 4:
                    g = Gate::swap_labels(4, a, b);
                    break;
            }
            t.apply_gate(g);
            c.append(g);
        }
        auto psi = oracle::noiseless_state(c);
        for (int k = 0; k < 4; k++) {
            auto s = t.stabilizer(k);
            CHECK(dense_expectation(psi, s) == doctest::Approx(1.0));
        }
        std::uniform_int_distribution<uint32_t> mask(0, 15);
        for (int k = 0; k < 20; k++) {
            auto p = PauliString::from_masks(4, false, mask(rng), mask(rng));
            CHECK(t.expectation(p) == doctest::Approx(dense_expectation(psi, p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("measurement collapses and reset prepares") {
    Tableau t(2);
    t.apply_gate(Gate::h(1));
    CHECK_FALSE(t.is_deterministic(1));
    int m = t.measure(1, [] { return 1; });
    CHECK(m == 1);
    CHECK(t.expectation(PauliString::from_str("IZ")) == -1);
    t.reset(1, PrepBasis::Plus, fixed_bit);
    CHECK(t.expectation(PauliString::from_str("IX")) == +1);
    t.reset(1, PrepBasis::Zero, [] { return 1; });
    CHECK(t.expectation(PauliString::from_str("IZ")) == +1);
    t.apply_pauli(0, Pauli::Y);
    CHECK(t.expectation(PauliString::from_str("ZI")) == -1);
}
