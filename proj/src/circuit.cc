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

#include "baconshor/circuit.h"

#include <set>
#include <sstream>
#include <stdexcept>

namespace baconshor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

const char *marker_name(MarkerKind kind) {
    switch (kind) {
        case MarkerKind::NoiselessBegin:
            return "NOISELESS_BEGIN";
        case MarkerKind::NoiselessEnd:
            return "NOISELESS_END";
        case MarkerKind::RoundBegin:
            return "ROUND_BEGIN";
        case MarkerKind::RoundEnd:
            return "ROUND_END";
    }
    return "?";
}

}  // namespace

std::string item_str(const CircuitItem &item) {
    return std::visit(
        overloaded{
            [](const Gate &g) { return g.str(); },
            [](const NoiseSite &n) { return "NOISE " + std::to_string(n.qubit); },
            [](const AncillaPrep &p) {
                return "PREP " + std::to_string(p.qubit) + (p.basis == PrepBasis::Zero ? " ZERO" : " PLUS");
            },
            [](const AncillaMeasure &m) { return "MEASURE " + std::to_string(m.qubit) + " " + m.label; },
            [](const Marker &m) { return std::string(marker_name(m.kind)); },
            [](const Readout &) { return std::string("READOUT"); },
        },
        item);
}

void PhysicalCircuit::append(const PhysicalCircuit &other) {
    if (other.num_qubits > num_qubits) {
        num_qubits = other.num_qubits;
    }
    items.insert(items.end(), other.items.begin(), other.items.end());
}

void PhysicalCircuit::append_noisy(const Gate &g) {
    items.emplace_back(g);
    if (g.kind == GateKind::QubitRelabel) {
        return;
    }
    for (int t : g.targets) {
        items.emplace_back(NoiseSite{t});
    }
}

int PhysicalCircuit::count_noise_sites() const {
    int n = 0;
    for (const auto &item : items) {
        n += std::holds_alternative<NoiseSite>(item);
    }
    return n;
}

int PhysicalCircuit::count_gates(GateKind kind) const {
    int n = 0;
    for (const auto &item : items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            n += g->kind == kind;
        }
    }
    return n;
}

int PhysicalCircuit::count_measurements() const {
    int n = 0;
    for (const auto &item : items) {
        n += std::holds_alternative<AncillaMeasure>(item);
    }
    return n;
}

int PhysicalCircuit::count_rounds() const {
    int n = 0;
    for (const auto &item : items) {
        if (const auto *m = std::get_if<Marker>(&item)) {
            n += m->kind == MarkerKind::RoundBegin;
        }
    }
    return n;
}

std::vector<Gate> PhysicalCircuit::gates() const {
    std::vector<Gate> result;
    for (const auto &item : items) {
        if (const auto *g = std::get_if<Gate>(&item)) {
            result.push_back(*g);
        }
    }
    return result;
}

std::string PhysicalCircuit::str() const {
    std::string result = "QUBITS " + std::to_string(num_qubits) + "\n";
    for (const auto &item : items) {
        result += item_str(item);
        result += '\n';
    }
    return result;
}

PhysicalCircuit PhysicalCircuit::from_str(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    PhysicalCircuit circuit;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream words(line);
        std::string op;
        words >> op;
        auto read_int = [&]() {
            int v;
            if (!(words >> v)) {
                throw std::invalid_argument("Bad circuit line: '" + line + "'.");
            }
            return v;
        };
        if (op == "QUBITS") {
            circuit.num_qubits = read_int();
            have_header = true;
        } else if (op == "H") {
            circuit.append(Gate::h(read_int()));
        } else if (op == "X") {
            circuit.append(Gate::x(read_int()));
        } else if (op == "Z") {
            circuit.append(Gate::z(read_int()));
        } else if (op == "CNOT") {
            int c = read_int();
            circuit.append(Gate::cnot(c, read_int()));
        } else if (op == "RELABEL") {
            std::vector<int> perm;
            int v;
            while (words >> v) {
                perm.push_back(v);
            }
            circuit.append(Gate::relabel(std::move(perm)));
        } else if (op == "NOISE") {
            circuit.append(NoiseSite{read_int()});
        } else if (op == "PREP") {
            int q = read_int();
            std::string basis;
            words >> basis;
            if (basis != "ZERO" && basis != "PLUS") {
                throw std::invalid_argument("Bad circuit line: '" + line + "'.");
            }
            circuit.append(AncillaPrep{q, basis == "ZERO" ? PrepBasis::Zero : PrepBasis::Plus});
        } else if (op == "MEASURE") {
            int q = read_int();
            std::string label;
            if (!(words >> label)) {
                throw std::invalid_argument("Bad circuit line: '" + line + "'.");
            }
            circuit.append(AncillaMeasure{q, label});
        } else if (op == "READOUT") {
            circuit.append(Readout{});
        } else {
            bool found = false;
            for (auto kind : {MarkerKind::NoiselessBegin, MarkerKind::NoiselessEnd, MarkerKind::RoundBegin,
                              MarkerKind::RoundEnd}) {
                if (op == marker_name(kind)) {
                    circuit.append(Marker{kind});
                    found = true;
                }
            }
            if (!found) {
                throw std::invalid_argument("Unknown circuit instruction: '" + op + "'.");
            }
        }
    }
    if (!have_header) {
        throw std::invalid_argument("Circuit text is missing its QUBITS header.");
    }
    return circuit;
}

void PhysicalCircuit::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Circuit register size out of range.");
    }
    auto check_qubit = [&](int q) {
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("Qubit index " + std::to_string(q) + " out of range.");
        }
    };
    bool noiseless = false;
    bool in_round = false;
    std::set<std::string> round_labels;
    for (size_t k = 0; k < items.size(); k++) {
        const auto &item = items[k];
        if (const auto *g = std::get_if<Gate>(&item)) {
            for (int t : g->targets) {
                check_qubit(t);
            }
            if (g->kind == GateKind::QubitRelabel && (int)g->targets.size() != num_qubits) {
                throw std::invalid_argument("Relabel must permute the whole register.");
            }
            if (noiseless) {
                continue;
            }
            // The gate's noise sites must follow it immediately, one per acted qubit.
            std::multiset<int> expected;
            if (g->kind != GateKind::QubitRelabel) {
                expected.insert(g->targets.begin(), g->targets.end());
            }
            std::multiset<int> found;
            size_t j = k + 1;
            while (j < items.size() && std::holds_alternative<NoiseSite>(items[j])) {
                found.insert(std::get<NoiseSite>(items[j]).qubit);
                j++;
            }
            if (found != expected) {
                throw std::invalid_argument("Gate '" + g->str() + "' at item " + std::to_string(k) +
                                            " is not followed by exactly one noise site per acted qubit.");
            }
            k = j - 1;
        } else if (std::holds_alternative<NoiseSite>(item)) {
            throw std::invalid_argument("Noise site at item " + std::to_string(k) + " does not follow a gate.");
        } else if (const auto *p = std::get_if<AncillaPrep>(&item)) {
            check_qubit(p->qubit);
        } else if (const auto *m = std::get_if<AncillaMeasure>(&item)) {
            check_qubit(m->qubit);
            if (in_round && !round_labels.insert(m->label).second) {
                throw std::invalid_argument("Measurement label '" + m->label + "' repeated within a round.");
            }
        } else if (const auto *mk = std::get_if<Marker>(&item)) {
            switch (mk->kind) {
                case MarkerKind::NoiselessBegin:
                    if (noiseless) {
                        throw std::invalid_argument("Nested noiseless region.");
                    }
                    noiseless = true;
                    break;
                case MarkerKind::NoiselessEnd:
                    if (!noiseless) {
                        throw std::invalid_argument("Unbalanced noiseless region.");
                    }
                    noiseless = false;
                    break;
                case MarkerKind::RoundBegin:
                    if (in_round) {
                        throw std::invalid_argument("Nested syndrome round.");
                    }
                    in_round = true;
                    round_labels.clear();
                    break;
                case MarkerKind::RoundEnd:
                    if (!in_round) {
                        throw std::invalid_argument("Unbalanced syndrome round.");
                    }
                    in_round = false;
                    break;
            }
        } else if (std::holds_alternative<Readout>(item)) {
            if (num_qubits < 4) {
                throw std::invalid_argument("Readout needs four data qubits.");
            }
        }
    }
    if (noiseless || in_round) {
        throw std::invalid_argument("Circuit ends inside an open region.");
    }
}

}  // namespace baconshor
