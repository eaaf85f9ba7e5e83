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

#include "baconshor/trajectory.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "baconshor/parallel.h"
#include "baconshor/tableau.h"

namespace baconshor {

std::optional<Pauli> sample_depolarizing_fault(double p, Rng &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (p <= 0.0 || unit(rng) >= p) {
        return std::nullopt;
    }
    static constexpr Pauli kFaults[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    return kFaults[std::uniform_int_distribution<int>(0, 2)(rng)];
}

namespace {

class PauliFrame {
   public:
    explicit PauliFrame(int n) : frame_(n) {}

    void apply_gate(const Gate &g) { frame_ = conjugate_by_gate(frame_, g).unsigned_copy(); }
    void inject(int q, Pauli p) {
        PauliString f(frame_.num_qubits());
        f.set(q, p);
        frame_ = PauliString::from_masks(frame_.num_qubits(), false, frame_.xs() ^ f.xs(), frame_.zs() ^ f.zs());
    }
    void clear(int q) { frame_.set(q, Pauli::I); }
    int flips_z_measurement(int q) const { return (frame_.xs() >> q) & 1; }

   private:
    PauliString frame_;
};

// Runs the noisy tableau, optionally in lockstep with a noiseless reference and its error frame.
class TrajectoryRunner {
   public:
    TrajectoryRunner(int n, Rng &rng, bool self_check)
        : rng_(rng), noisy_(n), self_check_(self_check), reference_(n), frame_(n) {}

    void apply_gate(const Gate &g) {
        noisy_.apply_gate(g);
        if (self_check_) {
            reference_.apply_gate(g);
            frame_.apply_gate(g);
        }
    }

    void inject(int q, Pauli p) {
        noisy_.apply_pauli(q, p);
        if (self_check_) {
            frame_.inject(q, p);
        }
    }

    int measure(int q) {
        auto coin = [this]() { return int(rng_() & 1); };
        if (!self_check_) {
            return noisy_.measure(q, coin);
        }
        bool random = reference_.is_deterministic(q) == false;
        if (random != !noisy_.is_deterministic(q)) {
            throw std::logic_error("Reference and noisy tableaus disagree on measurement randomness.");
        }
        int ref = reference_.measure(q, coin);
        int flip = frame_.flips_z_measurement(q);
        int expected = ref ^ flip;
        int got = noisy_.measure(q, [expected]() { return expected; });
        if (got != expected) {
            throw std::logic_error("Pauli frame prediction disagrees with tableau measurement on qubit " +
                                   std::to_string(q) + ".");
        }
        return got;
    }

    void reset(int q, PrepBasis basis) {
        int outcome = measure(q);
        if (outcome) {
            noisy_.apply_pauli(q, Pauli::X);
        }
        if (self_check_) {
            if (reference_.measure(q, [] { return 0; })) {
                reference_.apply_pauli(q, Pauli::X);
            }
            frame_.clear(q);
        }
        if (basis == PrepBasis::Plus) {
            apply_gate(Gate::h(q));
        }
    }

   private:
    Rng &rng_;
    Tableau noisy_;
    bool self_check_;
    Tableau reference_;
    PauliFrame frame_;
};

}  // namespace

TrajectoryOutcome run_trajectory(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule,
                                 Rng &rng, const TrajectoryOptions &options) {
    TrajectoryRunner runner(circuit.num_qubits, rng, options.frame_self_check);
    std::map<std::string, int> open;
    for (const auto &item : circuit.items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            runner.apply_gate(*g);
        } else if (const auto *n = std::get_if<NoiseSite>(&item)) {
            if (auto fault = sample_depolarizing_fault(noise.p, rng)) {
                runner.inject(n->qubit, *fault);
            }
        } else if (const auto *prep = std::get_if<AncillaPrep>(&item)) {
            runner.reset(prep->qubit, prep->basis);
        } else if (const auto *meas = std::get_if<AncillaMeasure>(&item)) {
            open[meas->label] = runner.measure(meas->qubit);
            for (const auto &[a, b] : rule.pairs) {
                auto ia = open.find(a);
                auto ib = open.find(b);
                if (ia == open.end() || ib == open.end()) {
                    continue;
                }
                if (ia->second != ib->second) {
                    return {false, 0};
                }
                open.erase(ia);
                open.erase(ib);
            }
        } else if (const auto *mk = std::get_if<Marker>(&item)) {
            if (mk->kind == MarkerKind::RoundEnd) {
                open.clear();
            }
        } else if (std::holds_alternative<Readout>(item)) {
            uint32_t bits = 0;
            for (int q = 0; q < kNumDataQubits; q++) {
                bits |= uint32_t(runner.measure(q)) << q;
            }
            auto bit = decode_z_readout(bits, rule.final_parity_check);
            if (!bit) {
                return {false, 0};
            }
            return {true, *bit};
        }
    }
    throw std::invalid_argument("Circuit has no Readout.");
}

void TrajectoryTally::add(const TrajectoryOutcome &outcome) {
    n_total++;
    if (outcome.accepted) {
        n_accepted++;
        counts[outcome.logical_bit]++;
    }
}

TrajectoryTally &TrajectoryTally::operator+=(const TrajectoryTally &other) {
    n_total += other.n_total;
    n_accepted += other.n_accepted;
    counts[0] += other.counts[0];
    counts[1] += other.counts[1];
    return *this;
}

double TrajectoryTally::p_ps() const {
    return n_total == 0 ? 0.0 : double(n_accepted) / double(n_total);
}

double TrajectoryTally::p_ps_stderr() const {
    if (n_total == 0) {
        return 0.0;
    }
    double p = p_ps();
    return std::sqrt(p * (1 - p) / double(n_total));
}

Distribution2 TrajectoryTally::conditional() const {
    if (n_accepted == 0) {
        return {0.5, 0.5};
    }
    return {double(counts[0]) / double(n_accepted), double(counts[1]) / double(n_accepted)};
}

double TrajectoryTally::conditional_stderr() const {
    if (n_accepted == 0) {
        return 0.0;
    }
    double p = conditional()[0];
    return std::sqrt(p * (1 - p) / double(n_accepted));
}

TrajectoryTally estimate(const PhysicalCircuit &circuit, const NoiseModel &noise, const AcceptanceRule &rule,
                         int64_t n_trajectories, uint64_t master_seed, int workers,
                         const TrajectoryOptions &options) {
    if (n_trajectories < 1) {
        throw std::invalid_argument("n_trajectories must be at least 1.");
    }
    auto run_range = [&](int64_t begin, int64_t end) {
        TrajectoryTally tally;
        for (int64_t k = begin; k < end; k++) {
            Rng rng = derive_stream(master_seed, {kTrajectoryStreamTag, uint64_t(k)});
            tally.add(run_trajectory(circuit, noise, rule, rng, options));
        }
        return tally;
    };
    constexpr int64_t kChunk = 4096;
    size_t chunks = size_t((n_trajectories + kChunk - 1) / kChunk);
    std::vector<TrajectoryTally> partial(chunks);
    parallel_for(chunks, workers, [&](size_t c) {
        int64_t begin = int64_t(c) * kChunk;
        partial[c] = run_range(begin, std::min(n_trajectories, begin + kChunk));
    });
    TrajectoryTally total;
    for (const auto &t : partial) {
        total += t;
    }
    return total;
}

}  // namespace baconshor
