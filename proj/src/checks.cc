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

#include "baconshor/checks.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "baconshor/experiment.h"
#include "baconshor/rng.h"
#include "baconshor/sitecount.h"
#include "baconshor/trajectory.h"

namespace baconshor {

namespace {

constexpr uint64_t kCheckStreamTag = 0xC4EC;

std::string fmt_double(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

PhysicalCircuit with_round_and_readout(PhysicalCircuit c) {
    c.append(syndrome_round_circuit());
    c.append(Marker{MarkerKind::NoiselessBegin});
    c.append(Readout{});
    c.append(Marker{MarkerKind::NoiselessEnd});
    return c;
}

// All 16 elements of the gauge group, signs dropped.
std::vector<PauliString> gauge_group_elements() {
    auto gens = gauge_generators();
    std::vector<PauliString> elems;
    for (int mask = 0; mask < 16; mask++) {
        PauliString acc(kNumDataQubits);
        for (int k = 0; k < 4; k++) {
            if (mask >> k & 1) {
                acc = PauliString::from_masks(kNumDataQubits, false, acc.xs() ^ gens[k].xs(), acc.zs() ^ gens[k].zs());
            }
        }
        elems.push_back(acc);
    }
    return elems;
}

bool contains_unsigned(const std::vector<PauliString> &set, const PauliString &p) {
    auto u = p.unsigned_copy();
    return std::any_of(set.begin(), set.end(), [&](const PauliString &s) { return s.unsigned_copy() == u; });
}

}  // namespace

void inject_pauli(PhysicalCircuit &circuit, int q, Pauli p) {
    if (p == Pauli::I) {
        return;
    }
    circuit.append(Marker{MarkerKind::NoiselessBegin});
    if (p == Pauli::X || p == Pauli::Y) {
        circuit.append(Gate::x(q));
    }
    if (p == Pauli::Z || p == Pauli::Y) {
        circuit.append(Gate::z(q));
    }
    circuit.append(Marker{MarkerKind::NoiselessEnd});
}

ReadoutWeights execute_density_exhaustive(const PhysicalCircuit &circuit, const NoiseModel &noise,
                                          const AcceptanceRule &rule) {
    struct Record {
        int round;
        std::string label;
        int outcome;
    };
    struct Path {
        DensityState rho;
        std::vector<Record> records;
    };
    std::vector<Path> paths;
    paths.push_back({DensityState(circuit.num_qubits), {}});
    int round = 0;
    ReadoutWeights weights;

    auto accepted = [&](const Path &path) {
        for (int r = 0; r <= round; r++) {
            for (const auto &[a, b] : rule.pairs) {
                int oa = -1, ob = -1;
                for (const auto &rec : path.records) {
                    if (rec.round == r && rec.label == a) {
                        oa = rec.outcome;
                    }
                    if (rec.round == r && rec.label == b) {
                        ob = rec.outcome;
                    }
                }
                if (oa >= 0 && ob >= 0 && oa != ob) {
                    return false;
                }
            }
        }
        return true;
    };

    for (const auto &item : circuit.items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            for (auto &path : paths) {
                path.rho.apply_gate(*g);
            }
        } else if (const auto *n = std::get_if<NoiseSite>(&item)) {
            for (auto &path : paths) {
                path.rho.apply_depolarizing(n->qubit, noise.p);
            }
        } else if (const auto *prep = std::get_if<AncillaPrep>(&item)) {
            for (auto &path : paths) {
                path.rho.reset(prep->qubit, prep->basis);
            }
        } else if (const auto *meas = std::get_if<AncillaMeasure>(&item)) {
            std::vector<Path> next;
            for (const auto &path : paths) {
                for (int outcome = 0; outcome < 2; outcome++) {
                    Path child{path.rho.project(meas->qubit, outcome), path.records};
                    child.records.push_back({round, meas->label, outcome});
                    next.push_back(std::move(child));
                }
            }
            paths = std::move(next);
        } else if (const auto *mk = std::get_if<Marker>(&item)) {
            if (mk->kind == MarkerKind::RoundEnd) {
                round++;
            }
        } else if (std::holds_alternative<Readout>(item)) {
            for (const auto &path : paths) {
                if (!accepted(path)) {
                    continue;
                }
                auto diag = path.rho.diagonal();
                for (uint32_t idx = 0; idx < diag.size(); idx++) {
                    auto bit = decode_z_readout(idx & 0xF, rule.final_parity_check);
                    if (bit) {
                        weights.accepted += diag[idx];
                        weights.logical[*bit] += diag[idx];
                    }
                }
            }
        }
    }
    return weights;
}

CheckResult check_gauge_center() {
    CheckResult result{"gauge_center", true, ""};
    auto group = gauge_group_elements();
    std::vector<PauliString> center;
    for (const auto &g : group) {
        bool central = std::all_of(group.begin(), group.end(), [&](const PauliString &h) { return commutes(g, h); });
        if (central) {
            center.push_back(g);
        }
    }
    std::vector<PauliString> expected{PauliString::from_str("IIII"), PauliString::from_str("XXXX"),
                                      PauliString::from_str("ZZZZ"), PauliString::from_str("YYYY")};
    bool same = center.size() == expected.size() &&
                std::all_of(expected.begin(), expected.end(),
                            [&](const PauliString &e) { return contains_unsigned(center, e); });
    // The bare logical operators commute with the gauge group without belonging to it.
    for (const auto &l : {logical_x(), logical_z()}) {
        same = same && !contains_unsigned(group, l) &&
               std::all_of(group.begin(), group.end(), [&](const PauliString &h) { return commutes(l, h); });
    }
    same = same && !commutes(logical_x(), logical_z());
    result.passed = same;
    std::ostringstream detail;
    detail << "center:";
    for (const auto &c : center) {
        detail << " " << c.unsigned_copy().str();
    }
    result.detail = detail.str();
    return result;
}

CheckResult check_weight_one_detection() {
    CheckResult result{"weight_one_detection", true, ""};
    auto stabs = stabilizer_generators();
    int detected = 0;
    for (int q = 0; q < kNumDataQubits; q++) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliString e(kNumDataQubits);
            e.set(q, p);
            bool algebraic = !commutes(e, stabs[0]) || !commutes(e, stabs[1]);
            auto c = prep_circuit();
            inject_pauli(c, q, p);
            auto w = execute_density(with_round_and_readout(c), NoiseModel(0.0), AcceptanceRule{});
            bool simulated = w.accepted < 1e-12;
            if (algebraic && simulated) {
                detected++;
            } else {
                result.passed = false;
                result.detail += e.str() + " undetected; ";
            }
        }
    }
    result.detail += std::to_string(detected) + "/12 detected";
    return result;
}

CheckResult check_prep_faults() {
    CheckResult result{"prep_fault_enumeration", true, ""};
    auto prep = prep_circuit();
    int cases = 0, rejected = 0, harmless = 0;
    for (size_t k = 0; k < prep.items.size(); k++) {
        const auto *site = std::get_if<NoiseSite>(&prep.items[k]);
        if (!site) {
            continue;
        }
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            cases++;
            PhysicalCircuit c;
            c.num_qubits = prep.num_qubits;
            c.items.assign(prep.items.begin(), prep.items.begin() + (long)k + 1);
            inject_pauli(c, site->qubit, p);
            c.items.insert(c.items.end(), prep.items.begin() + (long)k + 1, prep.items.end());
            auto w = execute_density(with_round_and_readout(c), NoiseModel(0.0), AcceptanceRule{});
            if (w.accepted < 1e-12) {
                rejected++;
            } else if (w.logical[1] / w.accepted < 1e-10) {
                harmless++;
            } else {
                result.passed = false;
                result.detail += "fault on qubit " + std::to_string(site->qubit) + " after item " +
                                 std::to_string(k) + " is malignant; ";
            }
        }
    }
    result.passed = result.passed && cases == 18;
    result.detail += std::to_string(cases) + " cases: " + std::to_string(rejected) + " detected, " +
                     std::to_string(harmless) + " harmless";
    return result;
}

CheckResult check_gauge_invariance(uint64_t seed) {
    CheckResult result{"gauge_invariance", true, ""};
    Rng rng = derive_stream(seed, {kCheckStreamTag, 1});
    size_t prep_len = prep_circuit().items.size();
    double worst = 0;
    for (int trial = 0; trial < 6; trial++) {
        int depth = 1 + trial;
        auto seq = sample_logical_circuit(depth, rng);
        auto truth = true_output(seq);
        auto base = assemble_encoded_circuit(seq, 1 + trial % depth, {}, truth.basis);
        NoiseModel noise(0.01 * (1 + trial % 3));
        auto ref = run_encoded(base, noise, AcceptanceRule{}, truth.distribution());
        for (const auto &g : gauge_generators()) {
            PhysicalCircuit flipped;
            flipped.num_qubits = base.num_qubits;
            flipped.items.assign(base.items.begin(), base.items.begin() + (long)prep_len);
            for (int q = 0; q < kNumDataQubits; q++) {
                inject_pauli(flipped, q, g[q]);
            }
            flipped.items.insert(flipped.items.end(), base.items.begin() + (long)prep_len, base.items.end());
            auto r = run_encoded(flipped, noise, AcceptanceRule{}, truth.distribution());
            worst = std::max({worst, std::abs(r.p_ps - ref.p_ps), std::abs(r.delta_l - ref.delta_l)});
        }
    }
    result.passed = worst <= 1e-10;
    result.detail = "max deviation " + fmt_double(worst);
    return result;
}

CheckResult check_full_depolarization() {
    CheckResult result{"full_depolarization", true, ""};
    // A non-trivial two-qubit pure state.
    std::vector<DensityState::Scalar> amps{{0.5, 0.1}, {0.3, -0.4}, {-0.2, 0.5}, {0.1, 0.3}};
    double norm = 0;
    for (auto a : amps) {
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    auto rho = DensityState::from_amplitudes(amps);
    rho.apply_depolarizing(0, 0.75);
    rho.apply_depolarizing(1, 0.75);
    DensityState mixed(2);
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            mixed.at(i, j) = i == j ? 0.25 : 0.0;
        }
    }
    double diff = rho.max_abs_diff(mixed);
    result.passed = diff <= 1e-12;
    result.detail = "max deviation from I/4 " + fmt_double(diff);
    return result;
}

CheckResult check_noiseless_end_to_end(uint64_t seed) {
    CheckResult result{"noiseless_end_to_end", true, ""};
    Rng rng = derive_stream(seed, {kCheckStreamTag, 2});
    double worst = 0;
    for (int trial = 0; trial < 20; trial++) {
        int depth = 1 + trial;
        auto seq = sample_logical_circuit(depth, rng);
        auto truth = true_output(seq);
        int gap = 1 + trial % depth;
        auto r = run_encoded(assemble_encoded_circuit(seq, gap, {}, truth.basis), NoiseModel(0.0), AcceptanceRule{},
                             truth.distribution());
        worst = std::max({worst, r.delta_l, std::abs(1 - r.p_ps)});
    }
    result.passed = worst <= 1e-10;
    result.detail = "max |delta_L|, |1 - p_ps| " + fmt_double(worst);
    return result;
}

CheckResult check_branch_merge(uint64_t seed) {
    CheckResult result{"branch_merge_vs_exhaustive", true, ""};
    Rng rng = derive_stream(seed, {kCheckStreamTag, 3});
    double worst = 0;
    for (int trial = 0; trial < 4; trial++) {
        auto seq = sample_logical_circuit(2, rng);
        auto truth = true_output(seq);
        ScheduleFlags flags;
        flags.round_after_prep = trial % 2 == 1;
        AcceptanceRule rule;
        rule.final_parity_check = trial < 2;
        auto c = assemble_encoded_circuit(seq, 1, flags, truth.basis);
        NoiseModel noise(0.02 + 0.01 * trial);
        auto merged = execute_density(c, noise, rule);
        auto full = execute_density_exhaustive(c, noise, rule);
        worst = std::max({worst, std::abs(merged.accepted - full.accepted),
                          std::abs(merged.logical[0] - full.logical[0]), std::abs(merged.logical[1] - full.logical[1])});
    }
    result.passed = worst <= 1e-10;
    result.detail = "max weight deviation " + fmt_double(worst);
    return result;
}

CheckResult check_cross_engine(int64_t n_trajectories, int n_configs, uint64_t seed, int workers) {
    CheckResult result{"cross_engine", true, ""};
    Rng rng = derive_stream(seed, {kCheckStreamTag, 4});
    std::uniform_real_distribution<double> log_p(std::log(0.002), std::log(0.05));
    double worst_sigma = 0;
    for (int k = 0; k < n_configs; k++) {
        int depth = std::uniform_int_distribution<int>(1, 6)(rng);
        int gap = std::uniform_int_distribution<int>(1, depth)(rng);
        double p = std::exp(log_p(rng));
        auto seq = sample_logical_circuit(depth, rng);
        auto truth = true_output(seq);
        ScheduleFlags flags;
        flags.round_after_prep = k % 3 == 0;
        auto c = assemble_encoded_circuit(seq, gap, flags, truth.basis);
        NoiseModel noise(p);
        AcceptanceRule rule;
        auto exact = execute_density(c, noise, rule);
        auto tally = estimate(c, noise, rule, n_trajectories, derive_stream(seed, {kCheckStreamTag, 5, (uint64_t)k})(),
                              workers);
        double floor = 1.0 / double(n_trajectories);
        double z_ps = std::abs(tally.p_ps() - exact.accepted) / std::max(tally.p_ps_stderr(), floor);
        double z_l = 0;
        if (!tally.degenerate() && exact.accepted > 0) {
            double exact_p1 = exact.logical[1] / exact.accepted;
            z_l = std::abs(tally.conditional()[1] - exact_p1) /
                  std::max(tally.conditional_stderr(), 1.0 / double(tally.n_accepted));
        }
        double z = std::max(z_ps, z_l);
        worst_sigma = std::max(worst_sigma, z);
        if (z > 4) {
            result.passed = false;
            result.detail += "config " + std::to_string(k) + " (depth " + std::to_string(depth) + ", gap " +
                             std::to_string(gap) + ", p " + fmt_double(p) + ") off by " + fmt_double(z) +
                             " sigma; ";
        }
    }
    result.detail += "worst deviation " + fmt_double(worst_sigma) + " sigma over " + std::to_string(n_configs) +
                     " configurations";
    return result;
}

CheckResult check_sitecount_bisection(uint64_t seed) {
    CheckResult result{"sitecount_bisection_vs_scan", true, ""};
    Rng rng = derive_stream(seed, {kCheckStreamTag, 6});
    double worst = 0;
    for (int k = 0; k < 10; k++) {
        int T = std::uniform_int_distribution<int>(1, 100)(rng);
        int M = std::uniform_int_distribution<int>(0, T)(rng);
        double bisected = sitecount_threshold(T, M);
        double scanned = kSiteCountPMax;
        double prev = 0;
        for (int i = 1; i <= 100000; i++) {
            double p = 1e-6 * i;
            SiteCountParams s{T, M, p};
            if (encoded_success(s) < unencoded_success(T, p)) {
                scanned = prev;
                break;
            }
            prev = p;
        }
        worst = std::max(worst, std::abs(bisected - scanned));
    }
    result.passed = worst <= 2e-6;
    result.detail = "max |bisection - scan| " + fmt_double(worst);
    return result;
}

std::vector<CheckResult> run_all_checks(const ValidateOptions &options) {
    return {
        check_gauge_center(),
        check_weight_one_detection(),
        check_prep_faults(),
        check_gauge_invariance(options.seed),
        check_full_depolarization(),
        check_noiseless_end_to_end(options.seed),
        check_branch_merge(options.seed),
        check_cross_engine(options.n_trajectories, options.n_configs, options.seed, options.workers),
        check_sitecount_bisection(options.seed),
    };
}

}  // namespace baconshor
