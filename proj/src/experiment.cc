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

#include "baconshor/experiment.h"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "baconshor/parallel.h"
#include "baconshor/trajectory.h"

namespace baconshor {

std::string engine_name(EngineKind engine) {
    return engine == EngineKind::DensityMatrix ? "densmat" : "stab";
}

std::string weighting_name(Weighting weighting) {
    return weighting == Weighting::RatioOfMeans ? "ratio_of_means" : "mean_of_ratios";
}

void ExperimentConfig::validate() const {
    if (depths.empty()) {
        throw std::invalid_argument("depths: must list at least one depth.");
    }
    for (int d : depths) {
        if (d < 1) {
            throw std::invalid_argument("depths: every depth must be at least 1.");
        }
    }
    if (gaps.empty()) {
        throw std::invalid_argument("gaps: must list at least one gap.");
    }
    for (int g : gaps) {
        if (g < 1) {
            throw std::invalid_argument("gaps: every gap must be at least 1.");
        }
    }
    for (size_t k = 0; k < p_grid.size(); k++) {
        if (!(p_grid[k] >= 0.0 && p_grid[k] <= 0.75)) {
            throw std::invalid_argument("p_grid: values must lie in [0, 0.75].");
        }
        if (k > 0 && !(p_grid[k] > p_grid[k - 1])) {
            throw std::invalid_argument("p_grid: values must be strictly increasing.");
        }
    }
    if (!p_grid.empty() && p_grid.size() < 4) {
        throw std::invalid_argument("p_grid: the threshold fit needs at least four points.");
    }
    if (n_circuits < 2) {
        throw std::invalid_argument("n_circuits: must be at least 2.");
    }
    if (n_trajectories < 1) {
        throw std::invalid_argument("n_trajectories: must be at least 1.");
    }
    auto order = schedule.round_order;
    auto expected = default_round_order();
    std::sort(order.begin(), order.end());
    std::sort(expected.begin(), expected.end());
    if (order != expected) {
        throw std::invalid_argument("round_order: must be a permutation of XXII, IIXX, ZIZI, IZIZ.");
    }
    if (grid.pilot_points < 2 || grid.refine_steps < 0 || grid.points < 4 || !(grid.span > 1.0) || !(grid.pilot_min > 0.0) ||
        !(grid.pilot_max > grid.pilot_min) || !(grid.ceiling > grid.floor) || !(grid.floor > 0.0) ||
        grid.ceiling > 0.75 || grid.pilot_max > 0.75) {
        throw std::invalid_argument("grid: inconsistent automatic grid settings.");
    }
}

AcceptanceRule ExperimentConfig::rule() const {
    AcceptanceRule r;
    r.final_parity_check = final_parity_check;
    return r;
}

std::vector<LogicalGate> sample_logical_circuit(int depth, Rng &rng) {
    if (depth < 1) {
        throw std::invalid_argument("depth must be at least 1.");
    }
    static constexpr LogicalGate kGates[3] = {LogicalGate::X, LogicalGate::Z, LogicalGate::H};
    std::uniform_int_distribution<int> pick(0, 2);
    std::vector<LogicalGate> seq(depth);
    for (auto &g : seq) {
        g = kGates[pick(rng)];
    }
    return seq;
}

std::vector<std::vector<LogicalGate>> draw_circuits(int depth, int n_circuits, uint64_t seed) {
    std::vector<std::vector<LogicalGate>> circuits;
    circuits.reserve(n_circuits);
    for (int k = 0; k < n_circuits; k++) {
        Rng rng = derive_stream(seed, {kCircuitStreamTag, uint64_t(depth), uint64_t(k)});
        circuits.push_back(sample_logical_circuit(depth, rng));
    }
    return circuits;
}

TrueOutput true_output(std::span<const LogicalGate> logical_seq) {
    TrueOutput state;
    for (auto g : logical_seq) {
        switch (g) {
            case LogicalGate::X:
                if (state.basis == MeasurementBasis::Z) {
                    state.bit ^= 1;
                }
                break;
            case LogicalGate::Z:
                if (state.basis == MeasurementBasis::X) {
                    state.bit ^= 1;
                }
                break;
            case LogicalGate::H:
                state.basis = state.basis == MeasurementBasis::Z ? MeasurementBasis::X : MeasurementBasis::Z;
                break;
        }
    }
    return state;
}

double run_bare(std::span<const LogicalGate> logical_seq, const NoiseModel &noise, const TrueOutput &truth) {
    DensityState rho(1);
    auto noisy = [&](const Gate &g) {
        rho.apply_gate(g);
        rho.apply_depolarizing(0, noise.p);
    };
    for (auto g : logical_seq) {
        switch (g) {
            case LogicalGate::X:
                noisy(Gate::x(0));
                break;
            case LogicalGate::Z:
                noisy(Gate::z(0));
                break;
            case LogicalGate::H:
                noisy(Gate::h(0));
                break;
        }
    }
    if (truth.basis == MeasurementBasis::X) {
        noisy(Gate::h(0));
    }
    double p0 = rho.at(0, 0).real();
    double p1 = rho.at(1, 1).real();
    return tvd({p0, p1}, truth.distribution());
}

EncodedSample run_encoded_sample(const ExperimentConfig &config, std::span<const LogicalGate> logical_seq, int gap,
                                 double p, uint64_t stream) {
    auto truth = true_output(logical_seq);
    auto circuit = assemble_encoded_circuit(logical_seq, gap, config.schedule, truth.basis);
    NoiseModel noise(p);
    auto rule = config.rule();
    if (config.engine == EngineKind::DensityMatrix) {
        auto r = run_encoded(circuit, noise, rule, truth.distribution());
        return {r.delta_l, r.p_ps};
    }
    auto tally = estimate(circuit, noise, rule, config.n_trajectories, stream, 1);
    if (tally.degenerate()) {
        throw FullyRejected("No trajectory was accepted.");
    }
    return {tvd(tally.conditional(), truth.distribution()), tally.p_ps()};
}

std::vector<int> effective_gaps(int depth, std::span<const int> gaps) {
    std::vector<int> result;
    bool terminal = false;
    for (int g : gaps) {
        if (g < depth) {
            result.push_back(g);
        } else {
            terminal = true;
        }
    }
    if (terminal) {
        result.push_back(depth);
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

namespace {

uint64_t trajectory_seed(uint64_t seed, int depth, int gap, double p, size_t circuit) {
    Rng rng = derive_stream(
        seed, {kTrajectoryStreamTag, uint64_t(depth), uint64_t(gap), std::bit_cast<uint64_t>(p), uint64_t(circuit)});
    return rng();
}

std::string cell_context(int depth, int gap, double p, size_t circuit) {
    return " (depth " + std::to_string(depth) + ", gap " + std::to_string(gap) + ", p " + std::to_string(p) +
           ", circuit " + std::to_string(circuit) + ")";
}

}  // namespace

std::vector<SweepPoint> evaluate_points(const ExperimentConfig &config, int depth, int gap,
                                        std::span<const double> ps,
                                        const std::vector<std::vector<LogicalGate>> &circuits) {
    size_t n = circuits.size();
    std::vector<EncodedSample> encoded(ps.size() * n);
    std::vector<double> bare(ps.size() * n);
    parallel_for(encoded.size(), resolve_workers(config.workers), [&](size_t item) {
        size_t pi = item / n;
        size_t k = item % n;
        double p = ps[pi];
        try {
            encoded[item] =
                run_encoded_sample(config, circuits[k], gap, p, trajectory_seed(config.seed, depth, gap, p, k));
            bare[item] = run_bare(circuits[k], NoiseModel(p), true_output(circuits[k]));
        } catch (const FullyRejected &e) {
            throw FullyRejected(e.what() + cell_context(depth, gap, p, k));
        } catch (const std::exception &e) {
            throw std::runtime_error(e.what() + cell_context(depth, gap, p, k));
        }
    });
    std::vector<SweepPoint> points;
    for (size_t pi = 0; pi < ps.size(); pi++) {
        SweepPoint pt;
        pt.depth = depth;
        pt.gap = gap;
        pt.p = ps[pi];
        pt.n_circuits = (int)n;
        double ratio_sum = 0;
        for (size_t k = 0; k < n; k++) {
            const auto &e = encoded[pi * n + k];
            pt.mean_delta_l += e.delta_l;
            pt.mean_p_ps += e.p_ps;
            pt.mean_delta_s += bare[pi * n + k];
            ratio_sum += e.delta_l / e.p_ps;
        }
        pt.mean_delta_l /= double(n);
        pt.mean_p_ps /= double(n);
        pt.mean_delta_s /= double(n);
        pt.weighted = config.weighting == Weighting::RatioOfMeans ? pt.mean_delta_l / pt.mean_p_ps
                                                                  : ratio_sum / double(n);
        points.push_back(pt);
    }
    return points;
}

double mean_p_ps(const ExperimentConfig &config, int depth, int gap, double p,
                 const std::vector<std::vector<LogicalGate>> &circuits) {
    double ps[1] = {p};
    return evaluate_points(config, depth, gap, ps, circuits)[0].mean_p_ps;
}

ThresholdEstimate fit_threshold(std::span<const SweepPoint> points) {
    if (points.size() < 4) {
        throw std::invalid_argument("fit_threshold needs at least four sweep points.");
    }
    ThresholdEstimate est;
    est.depth = points.front().depth;
    est.gap = points.front().gap;

    // Fit in units of the largest p to keep the normal equations well conditioned.
    double scale = 0;
    double p_lo = std::numeric_limits<double>::infinity();
    double p_hi = 0;
    for (const auto &pt : points) {
        scale = std::max(scale, std::abs(pt.p));
        p_lo = std::min(p_lo, pt.p);
        p_hi = std::max(p_hi, pt.p);
    }
    if (scale == 0) {
        scale = 1;
    }
    Eigen::Index n = (Eigen::Index)points.size();
    Eigen::MatrixXd aq(n, 3), al(n, 2);
    Eigen::VectorXd yq(n), yl(n);
    for (Eigen::Index i = 0; i < n; i++) {
        double u = points[i].p / scale;
        aq(i, 0) = u * u;
        aq(i, 1) = u;
        aq(i, 2) = 1;
        al(i, 0) = u;
        al(i, 1) = 1;
        yq(i) = points[i].weighted;
        yl(i) = points[i].mean_delta_s;
    }
    Eigen::Vector3d cq = aq.colPivHouseholderQr().solve(yq);
    Eigen::Vector2d cl = al.colPivHouseholderQr().solve(yl);
    est.residual_q = std::sqrt((aq * cq - yq).squaredNorm() / double(n));
    est.residual_l = std::sqrt((al * cl - yl).squaredNorm() / double(n));
    est.quadratic = {cq(0) / (scale * scale), cq(1) / scale, cq(2)};
    est.linear = {cl(0) / scale, cl(1)};

    // Roots of q(u) - l(u) in scaled units.
    double a = cq(0), b = cq(1) - cl(0), c = cq(2) - cl(1);
    std::vector<double> roots;
    if (std::abs(a) < 1e-14 * (std::abs(b) + std::abs(c) + 1e-300)) {
        if (b != 0) {
            roots.push_back(-c / b);
        }
    } else {
        double disc = b * b - 4 * a * c;
        if (disc >= 0) {
            double sq = std::sqrt(disc);
            // Numerically stable pair.
            double t = -0.5 * (b + (b >= 0 ? sq : -sq));
            if (t != 0) {
                roots.push_back(t / a);
                roots.push_back(c / t);
            } else {
                roots.push_back(0.0);
            }
        }
    }
    for (auto &r : roots) {
        r *= scale;
    }
    std::sort(roots.begin(), roots.end());
    est.roots = roots;
    double tol = 1e-9 * scale;
    for (double r : roots) {
        if (r > 0 && r >= p_lo - tol && r <= p_hi + tol) {
            est.threshold = r;
            est.status = FitStatus::Ok;
            break;
        }
    }
    return est;
}

GridChoice choose_grid(const ExperimentConfig &config, int depth, int gap,
                       const std::vector<std::vector<LogicalGate>> &circuits) {
    const auto &policy = config.grid;
    auto geometric = [](double lo, double hi, int count) {
        std::vector<double> v(count);
        for (int i = 0; i < count; i++) {
            v[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
        }
        return v;
    };

    GridChoice choice;
    auto pilot = geometric(policy.pilot_min, policy.pilot_max, policy.pilot_points);
    auto excess = [&](double p) {
        double one[1] = {p};
        try {
            auto pt = evaluate_points(config, depth, gap, one, circuits)[0];
            return pt.weighted - pt.mean_delta_s;
        } catch (const FullyRejected &) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::vector<double> diff;
    for (double p : pilot) {
        diff.push_back(excess(p));
    }
    double p_hat = policy.pilot_max;
    if (diff[0] > 0) {
        p_hat = policy.pilot_min;
    } else {
        for (size_t i = 1; i < pilot.size(); i++) {
            if (diff[i] > 0) {
                double a = pilot[i - 1], b = pilot[i];
                double da = diff[i - 1], db = diff[i];
                for (int s = 0; s < policy.refine_steps; s++) {
                    double mid = std::sqrt(a * b);
                    double dm = excess(mid);
                    if (dm > 0) {
                        b = mid;
                        db = dm;
                    } else {
                        a = mid;
                        da = dm;
                    }
                }
                double t = std::isinf(db) ? 0.5 : da / (da - db);
                p_hat = std::exp(std::log(a) + t * (std::log(b) - std::log(a)));
                break;
            }
        }
    }
    choice.pilot_estimate = p_hat;

    double lo = std::max(policy.floor, p_hat / policy.span);
    double hi = std::min(policy.ceiling, p_hat * policy.span);
    if (!(hi > lo)) {
        hi = std::min(policy.ceiling, lo * policy.span * policy.span);
        lo = std::min(lo, hi / (policy.span * policy.span));
    }
    for (double p : geometric(lo, hi, policy.points)) {
        double one[1] = {p};
        try {
            choice.points.push_back(evaluate_points(config, depth, gap, one, circuits)[0]);
            choice.grid.push_back(p);
        } catch (const FullyRejected &) {
            choice.dropped.push_back(p);
        }
    }
    return choice;
}

std::vector<SweepPoint> SweepResult::points() const {
    std::vector<SweepPoint> all;
    for (const auto &cell : cells) {
        all.insert(all.end(), cell.points.begin(), cell.points.end());
    }
    return all;
}

std::vector<ThresholdEstimate> SweepResult::thresholds() const {
    std::vector<ThresholdEstimate> all;
    for (const auto &cell : cells) {
        all.push_back(cell.threshold);
    }
    return all;
}

SweepResult sweep(const ExperimentConfig &config) {
    config.validate();
    SweepResult result;
    for (int depth : config.depths) {
        auto circuits = draw_circuits(depth, config.n_circuits, config.seed);
        for (int gap : effective_gaps(depth, config.gaps)) {
            SweepCell cell;
            cell.depth = depth;
            cell.gap = gap;
            if (config.p_grid.empty()) {
                cell.grid = choose_grid(config, depth, gap, circuits);
                cell.points = cell.grid.points;
            } else {
                cell.grid.grid = config.p_grid;
                cell.points = evaluate_points(config, depth, gap, cell.grid.grid, circuits);
            }
            if (cell.points.size() >= 4) {
                cell.threshold = fit_threshold(cell.points);
            } else {
                cell.threshold.depth = depth;
                cell.threshold.gap = gap;
            }
            if (cell.threshold.threshold) {
                try {
                    cell.p_ps_at_threshold = mean_p_ps(config, depth, gap, *cell.threshold.threshold, circuits);
                } catch (const FullyRejected &) {
                }
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

}  // namespace baconshor
