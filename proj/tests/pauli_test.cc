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
#include "baconshor/pauli.h"
#include "oracle.h"

using namespace baconshor;

namespace {

PauliString P(const char *s) {
    return PauliString::from_str(s);
}

PauliString random_pauli(int n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<uint32_t> bits(0, (1u << n) - 1);
    return PauliString::from_masks(n, rng() & 1, bits(rng), bits(rng));
}

std::vector<Gate> h_logical() {
    return {Gate::h(0), Gate::h(1), Gate::h(2), Gate::h(3), Gate::swap_labels(5, 1, 2)};
}

}  // namespace

TEST_CASE("pauli text round trip") {
    CHECK(P("XIXI").str() == "+XIXI");
    CHECK(P("-ZZII").str() == "-ZZII");
    CHECK(P("+X_Y_").str() == "+XIYI");
    CHECK(P("-ZZII").negative());
    CHECK(P("XYZI").weight() == 3);
    CHECK_THROWS_AS(P("XQ"), std::invalid_argument);
}

TEST_CASE("multiply") {
    CHECK(P("XXII") * P("IIXX") == P("+XXXX"));
    CHECK(P("ZIZI") * P("IZIZ") == P("+ZZZZ"));
    CHECK(P("XIXI") * P("XIXI") == P("+IIII"));
    CHECK(P("XX") * P("ZZ") == P("-YY"));
    CHECK_THROWS_AS(P("XI") * P("XII"), std::invalid_argument);
    // X * Z = -iY is not Hermitian.
    CHECK_THROWS_AS(P("X") * P("Z"), std::domain_error);
}

TEST_CASE("multiply matches matrices") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 400; trial++) {
        auto a = random_pauli(3, rng);
        auto b = random_pauli(3, rng);
        oracle::Mat m = oracle::pauli_string_matrix(a) * oracle::pauli_string_matrix(b);
        try {
            auto c = a * b;
            CHECK((m - oracle::pauli_string_matrix(c)).norm() < 1e-12);
            checked++;
        } catch (const std::domain_error &) {
            // imaginary phase: the matrix product must be anti-Hermitian
            CHECK((m + m.adjoint()).norm() < 1e-12);
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("commutes") {
    CHECK(commutes(P("XXXX"), P("ZZZZ")));
    CHECK_FALSE(commutes(P("XIXI"), P("ZZII")));
    CHECK_FALSE(commutes(P("XXII"), P("ZIZI")));
    CHECK_THROWS_AS(commutes(P("X"), P("XX")), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        auto a = random_pauli(4, rng);
        auto b = random_pauli(4, rng);
        oracle::Mat ma = oracle::pauli_string_matrix(a), mb = oracle::pauli_string_matrix(b);
        bool matrix_commute = (ma * mb - mb * ma).norm() < 1e-12;
        CHECK(commutes(a, b) == matrix_commute);
    }
}

TEST_CASE("conjugate_by_gate examples") {
    CHECK(conjugate_by_gate(P("XIII"), Gate::h(0)) == P("ZIII"));
    auto hl = h_logical();
    // 4-qubit strings against a 5-qubit relabel: pad with the ancilla.
    CHECK(conjugate_by_gates(P("XIXII"), hl) == P("ZZIII"));
    CHECK(conjugate_by_gates(P("ZZIII"), hl) == P("XIXII"));
}

TEST_CASE("conjugate_by_gate matches matrices") {
    std::mt19937_64 rng(7);
    std::vector<Gate> gates{Gate::h(0),        Gate::h(2),          Gate::x(1),
                            Gate::z(2),        Gate::cnot(0, 1),    Gate::cnot(2, 0),
                            Gate::cnot(1, 2),  Gate::relabel({2, 0, 1}), Gate::swap_labels(3, 0, 2)};
    for (const auto &g : gates) {
        oracle::Mat u = oracle::unitary(g, 3);
        for (int trial = 0; trial < 30; trial++) {
            auto p = random_pauli(3, rng);
            auto q = conjugate_by_gate(p, g);
            oracle::Mat expect = u * oracle::pauli_string_matrix(p) * u.adjoint();
            CHECK_MESSAGE((expect - oracle::pauli_string_matrix(q)).norm() < 1e-12, g.str(), " ", p.str());
        }
    }
}

TEST_CASE("gauge group center") {
    auto gens = gauge_generators();
    std::vector<PauliString> group;
    for (int mask = 0; mask < 16; mask++) {
        PauliString acc(4);
        for (int k = 0; k < 4; k++) {
            if (mask >> k & 1) {
                acc = PauliString::from_masks(4, false, acc.xs() ^ gens[k].xs(), acc.zs() ^ gens[k].zs());
            }
        }
        group.push_back(acc);
    }
    std::vector<std::string> center;
    for (const auto &g : group) {
        bool central = true;
        for (const auto &h : gens) {
            central = central && commutes(g, h);
        }
        if (central) {
            center.push_back(g.str());
        }
    }
    std::sort(center.begin(), center.end());
    CHECK(center == std::vector<std::string>{"+IIII", "+XXXX", "+YYYY", "+ZZZZ"});

    for (const auto &l : {logical_x(), logical_z()}) {
        for (const auto &g : gens) {
            CHECK(commutes(l, g));
        }
    }
    CHECK_FALSE(commutes(logical_x(), logical_z()));
}

TEST_CASE("logical hadamard permutes gauge group and swaps stabilizers") {
    auto hl = h_logical();
    auto pad = [](const PauliString &p) { return PauliString::from_masks(5, p.negative(), p.xs(), p.zs()); };
    std::vector<PauliString> gauge;
    for (const auto &g : gauge_generators()) {
        gauge.push_back(pad(g));
    }
    for (const auto &g : gauge) {
        auto image = conjugate_by_gates(g, hl).unsigned_copy();
        bool found = std::any_of(gauge.begin(), gauge.end(), [&](const PauliString &h) { return h == image; });
        CHECK_MESSAGE(found, g.str(), " -> ", image.str());
    }
    auto s = stabilizer_generators();
    CHECK(conjugate_by_gates(pad(s[0]), hl) == pad(s[1]));
    CHECK(conjugate_by_gates(pad(s[1]), hl) == pad(s[0]));
}

TEST_CASE("gate text") {
    CHECK(Gate::cnot(0, 2).str() == "CNOT 0 2");
    CHECK(Gate::swap_labels(5, 1, 2).str() == "RELABEL 0 2 1 3 4");
    CHECK(Gate::cnot(0, 2).noisy_arity() == 2);
    CHECK(Gate::h(3).noisy_arity() == 1);
    CHECK(Gate::swap_labels(5, 1, 2).noisy_arity() == 0);
    CHECK_THROWS_AS(Gate::relabel({0, 0, 1}), std::invalid_argument);
}
