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

#include "baconshor/checks.h"
#include "baconshor/density.h"
#include "baconshor/experiment.h"
#include "oracle.h"

using namespace baconshor;

namespace {

DensityState basis_state(int n, size_t idx) {
    DensityState rho(n);
    rho.at(0, 0) = 0;
    rho.at(idx, idx) = 1;
    return rho;
}

oracle::Mat to_mat(const DensityState &rho) {
    oracle::Mat m(rho.dim(), rho.dim());
    for (size_t i = 0; i < rho.dim(); i++) {
        for (size_t j = 0; j < rho.dim(); j++) {
            m(i, j) = rho.at(i, j);
        }
    }
    return m;
}

DensityState random_pure(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<DensityState::Scalar> amps(size_t(1) << n);
    double norm = 0;
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return DensityState::from_amplitudes(amps);
}

}  // namespace

TEST_CASE("fresh state is |0><0|") {
    DensityState rho(3);
    CHECK(rho.trace() == doctest::Approx(1.0));
    CHECK(rho.at(0, 0).real() == 1.0);
}

TEST_CASE("apply_gate examples") {
    auto rho = apply_gate(DensityState(1), Gate::x(0));
    CHECK(rho.at(1, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(rho.at(0, 0)) < 1e-15);

    std::mt19937_64 rng(3);
    auto psi = random_pure(3, rng);
    auto twice = apply_gate(apply_gate(psi, Gate::h(1)), Gate::h(1));
    CHECK(twice.max_abs_diff(psi) < 1e-12);

    DensityState plus0(2);
    plus0.apply_gate(Gate::h(0));
    auto bell = apply_gate(plus0, Gate::cnot(0, 1));
    for (size_t i : {size_t(0), size_t(3)}) {
        for (size_t j : {size_t(0), size_t(3)}) {
            CHECK(bell.at(i, j).real() == doctest::Approx(0.5));
        }
    }
    CHECK(std::abs(bell.at(1, 1)) < 1e-15);
}

TEST_CASE("gates match the dense oracle") {
    std::mt19937_64 rng(17);
    std::vector<Gate> gates{Gate::h(0),         Gate::h(4),          Gate::x(2),           Gate::z(3),
                            Gate::cnot(4, 1),   Gate::cnot(0, 3),    Gate::swap_labels(5, 1, 2),
                            Gate::relabel({3, 0, 4, 1, 2})};
    for (const auto &g : gates) {
        auto rho = random_pure(5, rng);
        rho.apply_depolarizing(2, 0.3);
        oracle::Mat u = oracle::unitary(g, 5);
        oracle::Mat expect = u * to_mat(rho) * u.adjoint();
        rho.apply_gate(g);
        CHECK_MESSAGE((to_mat(rho) - expect).cwiseAbs().maxCoeff() < 1e-12, g.str());
    }
}

TEST_CASE("depolarizing channel") {
    std::mt19937_64 rng(9);
    auto psi = random_pure(2, rng);
    CHECK(apply_depolarizing(psi, 1, NoiseModel(0.0)).max_abs_diff(psi) < 1e-15);

    auto one = random_pure(1, rng);
    auto mixed = apply_depolarizing(one, 0, NoiseModel(0.75));
    CHECK(mixed.at(0, 0).real() == doctest::Approx(0.5));
    CHECK(mixed.at(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(mixed.at(0, 1)) < 1e-15);

    for (double p : {0.01, 0.2, 0.5}) {
        auto r = apply_depolarizing(DensityState(1), 0, NoiseModel(p));
        CHECK(r.at(0, 0).real() == doctest::Approx(1 - 2 * p / 3));
        CHECK(r.at(1, 1).real() == doctest::Approx(2 * p / 3));
    }

    for (int q = 0; q < 3; q++) {
        auto rho = random_pure(3, rng);
        oracle::Mat expect = oracle::depolarize(to_mat(rho), q, 3, 0.37);
        rho.apply_depolarizing(q, 0.37);
        CHECK((to_mat(rho) - expect).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(NoiseModel(0.8), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel(-0.1), std::invalid_argument);
    CHECK(check_full_depolarization().passed);
}

TEST_CASE("reset and projection") {
    std::mt19937_64 rng(21);
    for (auto basis : {PrepBasis::Zero, PrepBasis::Plus}) {
        auto rho = random_pure(3, rng);
        oracle::Mat expect = oracle::reset(to_mat(rho), 1, 3, basis);
        rho.reset(1, basis);
        CHECK((to_mat(rho) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    auto rho = random_pure(3, rng);
    auto branches = measure_ancilla_branches(rho, 2);
    CHECK(branches[0].outcome == +1);
    CHECK(branches[1].outcome == -1);
    CHECK(branches[0].state.trace() + branches[1].state.trace() == doctest::Approx(rho.trace()));
    oracle::Mat p1 = oracle::projector(2, 1, 3);
    CHECK((to_mat(branches[1].state) - p1 * to_mat(rho) * p1).cwiseAbs().maxCoeff() < 1e-12);

    auto zero = measure_ancilla_branches(DensityState(5));
    CHECK(zero[0].state.trace() == doctest::Approx(1.0));
    CHECK(zero[1].state.trace() == doctest::Approx(0.0));
    DensityState plus(5);
    plus.reset(4, PrepBasis::Plus);
    auto halves = measure_ancilla_branches(plus);
    CHECK(halves[0].state.trace() == doctest::Approx(0.5));
    CHECK(halves[1].state.trace() == doctest::Approx(0.5));
}

TEST_CASE("run_encoded examples") {
    std::vector<LogicalGate> xz{LogicalGate::X, LogicalGate::Z};
    auto truth = true_output(xz);
    CHECK(truth.bit == 1);
    auto r = run_encoded(assemble_encoded_circuit(xz, 1), NoiseModel(0.0), AcceptanceRule{}, truth.distribution());
    CHECK(r.p_ps == doctest::Approx(1.0));
    CHECK(r.logical[1] == doctest::Approx(1.0));
    CHECK(r.delta_l == doctest::Approx(0.0));

    CHECK(check_noiseless_end_to_end(3).passed);

    auto c = prep_circuit();
    inject_pauli(c, 0, Pauli::X);
    c.append(syndrome_round_circuit());
    c.append(Marker{MarkerKind::NoiselessBegin});
    c.append(Readout{});
    c.append(Marker{MarkerKind::NoiselessEnd});
    CHECK(execute_density(c, NoiseModel(0.0), AcceptanceRule{}).accepted < 1e-15);
    CHECK_THROWS_AS(run_encoded(c, NoiseModel(0.0), AcceptanceRule{}, point_mass(0)), FullyRejected);
}

TEST_CASE("branch and merge equals exhaustive branching") {
    std::mt19937_64 rng(23);
    double worst = 0;
    int cases = 0;
    for (int trial = 0; trial < 6; trial++) {
        int depth = 1 + trial % 2;
        auto seq = sample_logical_circuit(depth, rng);
        auto truth = true_output(seq);
        ScheduleFlags flags;
        flags.round_after_prep = trial == 5;
        AcceptanceRule rule;
        rule.final_parity_check = trial % 3 != 2;
        auto c = assemble_encoded_circuit(seq, depth, flags, truth.basis);
        double p = 0.01 + 0.02 * trial;
        auto merged = execute_density(c, NoiseModel(p), rule);
        auto full = oracle::run(c, p, rule);
        worst = std::max({worst, std::abs(merged.accepted - full.accepted),
                          std::abs(merged.logical[0] - full.logical[0]), std::abs(merged.logical[1] - full.logical[1])});
        auto in_lib = execute_density_exhaustive(c, NoiseModel(p), rule);
        worst = std::max(worst, std::abs(in_lib.accepted - full.accepted));
        cases++;
    }
    CHECK(cases == 6);
    CHECK(worst < 1e-10);
}

TEST_CASE("gauge-flipped input leaves results unchanged") {
    std::mt19937_64 rng(29);
    size_t prep_len = prep_circuit().items.size();
    for (int trial = 0; trial < 8; trial++) {
        auto seq = sample_logical_circuit(1 + trial, rng);
        auto truth = true_output(seq);
        auto base = assemble_encoded_circuit(seq, 1 + trial % 3, {}, truth.basis);
        PhysicalCircuit flipped;
        flipped.num_qubits = base.num_qubits;
        flipped.items.assign(base.items.begin(), base.items.begin() + (long)prep_len);
        // XX on the first two qubits: |0000>+|1111> -> |1100>+|0011>.
        inject_pauli(flipped, 0, Pauli::X);
        inject_pauli(flipped, 1, Pauli::X);
        flipped.items.insert(flipped.items.end(), base.items.begin() + (long)prep_len, base.items.end());
        for (double p : {0.0, 0.004, 0.03}) {
            NoiseModel noise(p);
            auto a = run_encoded(base, noise, AcceptanceRule{}, truth.distribution());
            auto b = run_encoded(flipped, noise, AcceptanceRule{}, truth.distribution());
            CHECK(std::abs(a.p_ps - b.p_ps) < 1e-10);
            CHECK(std::abs(a.logical[1] - b.logical[1]) < 1e-10);
        }
        // A logical flip, by contrast, is visible.
        PhysicalCircuit logical = flipped;
        logical.items.assign(base.items.begin(), base.items.begin() + (long)prep_len);
        inject_pauli(logical, 0, Pauli::X);
        inject_pauli(logical, 2, Pauli::X);
        logical.items.insert(logical.items.end(), base.items.begin() + (long)prep_len, base.items.end());
        auto a = run_encoded(base, NoiseModel(0.0), AcceptanceRule{}, truth.distribution());
        auto c = run_encoded(logical, NoiseModel(0.0), AcceptanceRule{}, truth.distribution());
        if (truth.basis == MeasurementBasis::Z) {
            CHECK(std::abs(a.logical[1] - c.logical[1]) == doctest::Approx(1.0));
        }
    }
    CHECK(check_gauge_invariance(5).passed);
}

TEST_CASE("trace and hermiticity are preserved along a noisy run") {
    std::mt19937_64 rng(31);
    auto seq = sample_logical_circuit(6, rng);
    auto c = assemble_encoded_circuit(seq, 2);
    DensityState rho(5);
    for (const auto &item : c.items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            rho.apply_gate(*g);
        } else if (const auto *n = std::get_if<NoiseSite>(&item)) {
            rho.apply_depolarizing(n->qubit, 0.05);
        } else if (const auto *pr = std::get_if<AncillaPrep>(&item)) {
            rho.reset(pr->qubit, pr->basis);
        }
        CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
        CHECK(rho.hermiticity_error() < 1e-10);
    }
}

TEST_CASE("delta_L grows with p for fixed circuits") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 5; trial++) {
        auto seq = sample_logical_circuit(8, rng);
        auto truth = true_output(seq);
        auto c = assemble_encoded_circuit(seq, 4, {}, truth.basis);
        double prev = -1;
        for (double p : {0.0, 0.001, 0.01, 0.05}) {
            double d = run_encoded(c, NoiseModel(p), AcceptanceRule{}, truth.distribution()).delta_l;
            if (p == 0.0) {
                CHECK(d < 1e-12);
            }
            CHECK(d >= prev - 1e-12);
            prev = d;
        }
    }
}
