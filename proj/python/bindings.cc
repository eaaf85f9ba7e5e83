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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "baconshor/checks.h"
#include "baconshor/code.h"
#include "baconshor/density.h"
#include "baconshor/experiment.h"
#include "baconshor/pauli.h"
#include "baconshor/sitecount.h"
#include "baconshor/trajectory.h"

namespace py = pybind11;
using namespace baconshor;

namespace {

std::vector<LogicalGate> parse_gates(const std::vector<std::string> &names) {
    std::vector<LogicalGate> seq;
    for (const auto &n : names) {
        if (n == "X") {
            seq.push_back(LogicalGate::X);
        } else if (n == "Z") {
            seq.push_back(LogicalGate::Z);
        } else if (n == "H") {
            seq.push_back(LogicalGate::H);
        } else {
            throw std::invalid_argument("Logical gates are 'X', 'Z' or 'H', got '" + n + "'.");
        }
    }
    return seq;
}

std::vector<std::string> gate_names(const std::vector<LogicalGate> &seq) {
    std::vector<std::string> names;
    for (auto g : seq) {
        names.push_back(logical_gate_name(g).substr(0, 1));  // "X_L" -> "X"
    }
    return names;
}

PhysicalCircuit encoded(const std::vector<std::string> &gates, int gap, bool round_after_prep, bool final_round) {
    auto seq = parse_gates(gates);
    ScheduleFlags flags;
    flags.round_after_prep = round_after_prep;
    flags.final_round = final_round;
    return assemble_encoded_circuit(seq, gap, flags, true_output(seq).basis);
}

AcceptanceRule rule_for(bool final_parity_check) {
    AcceptanceRule rule;
    rule.final_parity_check = final_parity_check;
    return rule;
}

SuccessMeasure measure_for(bool conditional) {
    return conditional ? SuccessMeasure::Conditional : SuccessMeasure::Unconditional;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Four-qubit Bacon-Shor error-detection simulator.";

    py::class_<PauliString>(m, "PauliString")
        .def(py::init(&PauliString::from_str))
        .def("__str__", &PauliString::str)
        .def("__repr__", [](const PauliString &p) { return "PauliString('" + p.str() + "')"; })
        .def("__mul__", &multiply)
        .def("__eq__", [](const PauliString &a, const PauliString &b) { return a == b; })
        .def("commutes", &commutes)
        .def_property_readonly("weight", &PauliString::weight)
        .def_property_readonly("num_qubits", &PauliString::num_qubits);

    py::class_<PhysicalCircuit>(m, "PhysicalCircuit")
        .def("__str__", &PhysicalCircuit::str)
        .def_static("from_str", &PhysicalCircuit::from_str)
        .def_property_readonly("num_noise_sites", &PhysicalCircuit::count_noise_sites)
        .def_property_readonly("num_rounds", &PhysicalCircuit::count_rounds)
        .def_property_readonly("num_cnots", [](const PhysicalCircuit &c) { return c.count_gates(GateKind::CNOT); });

    m.def("prep_circuit", &prep_circuit);
    m.def("syndrome_round_circuit", py::overload_cast<>(&syndrome_round_circuit));
    m.def("encoded_circuit", &encoded, py::arg("gates"), py::arg("gap"), py::arg("round_after_prep") = false,
          py::arg("final_round") = true, "Encoded circuit for a logical gate list such as ['X', 'H'].");

    m.def(
        "true_output",
        [](const std::vector<std::string> &gates) {
            auto t = true_output(parse_gates(gates));
            return py::make_tuple(t.basis == MeasurementBasis::Z ? "Z" : "X", t.bit);
        },
        py::arg("gates"));

    m.def(
        "run_encoded",
        [](const std::vector<std::string> &gates, int gap, double p, bool final_parity_check,
           bool round_after_prep) {
            auto seq = parse_gates(gates);
            auto truth = true_output(seq);
            ScheduleFlags flags;
            flags.round_after_prep = round_after_prep;
            auto c = assemble_encoded_circuit(seq, gap, flags, truth.basis);
            auto r = run_encoded(c, NoiseModel(p), rule_for(final_parity_check), truth.distribution());
            py::dict d;
            d["p_ps"] = r.p_ps;
            d["logical"] = std::vector<double>{r.logical[0], r.logical[1]};
            d["delta_l"] = r.delta_l;
            return d;
        },
        py::arg("gates"), py::arg("gap"), py::arg("p"), py::arg("final_parity_check") = true,
        py::arg("round_after_prep") = false, "Exact density-matrix run with post-selection.");

    m.def(
        "estimate",
        [](const std::vector<std::string> &gates, int gap, double p, int64_t n_trajectories, uint64_t seed,
           int workers) {
            auto seq = parse_gates(gates);
            auto truth = true_output(seq);
            auto c = assemble_encoded_circuit(seq, gap, {}, truth.basis);
            auto t = estimate(c, NoiseModel(p), AcceptanceRule{}, n_trajectories, seed, workers);
            py::dict d;
            d["n_total"] = t.n_total;
            d["n_accepted"] = t.n_accepted;
            d["counts"] = std::vector<int64_t>{t.counts[0], t.counts[1]};
            d["p_ps"] = t.p_ps();
            d["p_ps_stderr"] = t.p_ps_stderr();
            return d;
        },
        py::arg("gates"), py::arg("gap"), py::arg("p"), py::arg("n_trajectories"), py::arg("seed") = 1,
        py::arg("workers") = 1, "Stabilizer Monte-Carlo estimate.");

    m.def(
        "run_bare",
        [](const std::vector<std::string> &gates, double p) {
            auto seq = parse_gates(gates);
            return run_bare(seq, NoiseModel(p), true_output(seq));
        },
        py::arg("gates"), py::arg("p"));

    m.def(
        "draw_circuits",
        [](int depth, int n, uint64_t seed) {
            std::vector<std::vector<std::string>> out;
            for (const auto &c : draw_circuits(depth, n, seed)) {
                out.push_back(gate_names(c));
            }
            return out;
        },
        py::arg("depth"), py::arg("n"), py::arg("seed") = 1);

    m.def(
        "sweep",
        [](std::vector<int> depths, std::vector<int> gaps, std::vector<double> p_grid, int n_circuits,
           uint64_t seed, const std::string &engine, int64_t n_trajectories, int workers) {
            ExperimentConfig c;
            c.depths = std::move(depths);
            c.gaps = std::move(gaps);
            c.p_grid = std::move(p_grid);
            c.n_circuits = n_circuits;
            c.seed = seed;
            c.engine = engine == "stab" ? EngineKind::Stabilizer : EngineKind::DensityMatrix;
            c.n_trajectories = n_trajectories;
            c.workers = workers;
            SweepResult result;
            {
                py::gil_scoped_release release;
                result = sweep(c);
            }
            py::list cells;
            for (const auto &cell : result.cells) {
                py::dict d;
                d["depth"] = cell.depth;
                d["gap"] = cell.gap;
                py::list points;
                for (const auto &pt : cell.points) {
                    py::dict row;
                    row["p"] = pt.p;
                    row["mean_delta_l"] = pt.mean_delta_l;
                    row["mean_p_ps"] = pt.mean_p_ps;
                    row["mean_delta_s"] = pt.mean_delta_s;
                    row["weighted"] = pt.weighted;
                    points.append(row);
                }
                d["points"] = points;
                d["threshold"] = cell.threshold.threshold;
                d["p_ps_at_threshold"] = cell.p_ps_at_threshold;
                cells.append(d);
            }
            return cells;
        },
        py::arg("depths"), py::arg("gaps"), py::arg("p_grid") = std::vector<double>{}, py::arg("n_circuits") = 200,
        py::arg("seed") = 1, py::arg("engine") = "densmat", py::arg("n_trajectories") = 20000,
        py::arg("workers") = 0);

    m.def(
        "fit_threshold",
        [](const std::vector<double> &ps, const std::vector<double> &weighted, const std::vector<double> &delta_s) {
            if (ps.size() != weighted.size() || ps.size() != delta_s.size()) {
                throw std::invalid_argument("fit_threshold: inputs must have equal length.");
            }
            std::vector<SweepPoint> pts(ps.size());
            for (size_t k = 0; k < ps.size(); k++) {
                pts[k].p = ps[k];
                pts[k].weighted = weighted[k];
                pts[k].mean_delta_s = delta_s[k];
            }
            auto est = fit_threshold(pts);
            py::dict d;
            d["threshold"] = est.threshold;
            d["quadratic"] = est.quadratic;
            d["linear"] = est.linear;
            d["roots"] = est.roots;
            return d;
        },
        py::arg("p"), py::arg("weighted"), py::arg("delta_s"));

    m.def("pairs", &pairs);
    m.def(
        "logical_success_bound", [](int T, int M, double p) { return logical_success_bound({T, M, p}); },
        py::arg("T"), py::arg("M"), py::arg("p"));
    m.def(
        "ps_bound", [](int T, int M, double p) { return ps_bound({T, M, p}); }, py::arg("T"), py::arg("M"),
        py::arg("p"));
    m.def("unencoded_success", &unencoded_success, py::arg("T"), py::arg("p"));
    m.def(
        "sitecount_threshold",
        [](int T, int M, bool conditional) { return sitecount_threshold(T, M, measure_for(conditional)); },
        py::arg("T"), py::arg("M"), py::arg("conditional") = true);
    m.def(
        "optimal_gap",
        [](int T, bool conditional) {
            auto g = optimal_gap(T, measure_for(conditional));
            return py::make_tuple(g.gap, g.M, g.threshold);
        },
        py::arg("T"), py::arg("conditional") = true);

    m.def(
        "run_checks",
        [](int64_t n_trajectories, int n_configs, uint64_t seed) {
            ValidateOptions o;
            o.n_trajectories = n_trajectories;
            o.n_configs = n_configs;
            o.seed = seed;
            py::list out;
            for (const auto &r : run_all_checks(o)) {
                py::dict d;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("n_trajectories") = 1000, py::arg("n_configs") = 20, py::arg("seed") = 1);

    py::register_exception<FullyRejected>(m, "FullyRejected", PyExc_RuntimeError);
}
