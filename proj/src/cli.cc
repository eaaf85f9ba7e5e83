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

#include "baconshor/cli.h"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "baconshor/parallel.h"

namespace baconshor {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys{
    "depths",          "gaps",           "p_grid",           "n_circuits",      "seed",
    "round_after_prep", "final_round",    "round_order",      "final_parity_check",
    "engine",          "n_trajectories", "weighting",        "workers",         "measurement_noise",
    "grid_pilot_points", "grid_pilot_min", "grid_pilot_max", "grid_refine_steps", "grid_points",
    "grid_span",       "grid_floor",     "grid_ceiling",     "sitecount_measure", "validate_trajectories",
    "validate_configs",
};

template <typename T>
T get_key(const json &obj, const std::string &key) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(key + ": wrong type (" + e.what() + ")");
    }
}

template <typename T>
void read_optional(const json &obj, const std::string &key, T &dst) {
    if (obj.contains(key)) {
        dst = get_key<T>(obj, key);
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string utc_now() {
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

class OutputDir {
   public:
    explicit OutputDir(const std::string &path) : root_(path) { std::filesystem::create_directories(root_); }

    void write(const std::string &name, const std::string &content) {
        std::ofstream out(root_ / name, std::ios::binary);
        out << content;
        if (!out) {
            throw std::runtime_error("cannot write " + (root_ / name).string());
        }
        digests_[name] = sha256_hex(content);
    }

    const json &digests() const { return digests_; }

   private:
    std::filesystem::path root_;
    json digests_ = json::object();
};

json manifest_base(const char *command, const CliConfig &cfg, const std::string &started) {
    const auto &e = cfg.experiment;
    json m;
    m["tool"] = "baconshor";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = json::parse(cfg.canonical_json);
    m["seed"] = e.seed;
    m["engine"] = engine_name(e.engine);
    m["schedule"] = {{"round_after_prep", e.schedule.round_after_prep},
                     {"final_round", e.schedule.final_round},
                     {"round_order", e.schedule.round_order},
                     {"final_parity_check", e.final_parity_check}};
    m["started_at"] = started;
    return m;
}

std::string csv_row(std::initializer_list<std::string> fields) {
    std::string row;
    bool first = true;
    for (const auto &f : fields) {
        if (!first) {
            row += ',';
        }
        row += f;
        first = false;
    }
    row += '\n';
    return row;
}

std::string fmt_opt(const std::optional<double> &v) {
    return v ? format_double(*v) : std::string();
}

template <typename Body>
int guarded(std::ostream &log, Body body) {
    try {
        return body();
    } catch (const ConfigError &e) {
        log << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

std::string format_double(double v) {
    return fmt::format("{:.17g}", v);
}

std::string sha256_hex(const std::string &bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed.");
    }
    std::string hex;
    for (unsigned int i = 0; i < len; i++) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

CliConfig parse_config(const std::string &text, Command command) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: not valid JSON (") + e.what() + ")");
    }
    if (!obj.is_object()) {
        throw ConfigError("config: must be a flat JSON object");
    }
    for (const auto &[key, value] : obj.items()) {
        if (!kKnownKeys.count(key)) {
            throw ConfigError(key + ": unknown key");
        }
        if (value.is_object()) {
            throw ConfigError(key + ": nested objects are not allowed");
        }
    }

    CliConfig cfg;
    auto &e = cfg.experiment;
    if (command != Command::Validate && !obj.contains("depths")) {
        throw ConfigError("depths: required key is missing");
    }
    read_optional(obj, "depths", e.depths);
    read_optional(obj, "gaps", e.gaps);
    read_optional(obj, "p_grid", e.p_grid);
    read_optional(obj, "n_circuits", e.n_circuits);
    read_optional(obj, "seed", e.seed);
    read_optional(obj, "round_after_prep", e.schedule.round_after_prep);
    read_optional(obj, "final_round", e.schedule.final_round);
    read_optional(obj, "round_order", e.schedule.round_order);
    read_optional(obj, "final_parity_check", e.final_parity_check);
    read_optional(obj, "n_trajectories", e.n_trajectories);
    read_optional(obj, "workers", e.workers);
    read_optional(obj, "grid_pilot_points", e.grid.pilot_points);
    read_optional(obj, "grid_pilot_min", e.grid.pilot_min);
    read_optional(obj, "grid_pilot_max", e.grid.pilot_max);
    read_optional(obj, "grid_refine_steps", e.grid.refine_steps);
    read_optional(obj, "grid_points", e.grid.points);
    read_optional(obj, "grid_span", e.grid.span);
    read_optional(obj, "grid_floor", e.grid.floor);
    read_optional(obj, "grid_ceiling", e.grid.ceiling);
    read_optional(obj, "validate_trajectories", cfg.validate.n_trajectories);
    read_optional(obj, "validate_configs", cfg.validate.n_configs);

    if (obj.contains("measurement_noise") && get_key<bool>(obj, "measurement_noise")) {
        throw ConfigError("measurement_noise: noisy measurement and preparation are not supported");
    }
    if (obj.contains("engine")) {
        auto name = get_key<std::string>(obj, "engine");
        if (name == "densmat") {
            e.engine = EngineKind::DensityMatrix;
        } else if (name == "stab") {
            e.engine = EngineKind::Stabilizer;
        } else {
            throw ConfigError("engine: expected \"densmat\" or \"stab\", got \"" + name + "\"");
        }
    }
    if (obj.contains("weighting")) {
        auto name = get_key<std::string>(obj, "weighting");
        if (name == "ratio_of_means") {
            e.weighting = Weighting::RatioOfMeans;
        } else if (name == "mean_of_ratios") {
            e.weighting = Weighting::MeanOfRatios;
        } else {
            throw ConfigError("weighting: expected \"ratio_of_means\" or \"mean_of_ratios\"");
        }
    }
    if (obj.contains("sitecount_measure")) {
        auto name = get_key<std::string>(obj, "sitecount_measure");
        if (name == "conditional") {
            cfg.sitecount_measure = SuccessMeasure::Conditional;
        } else if (name == "unconditional") {
            cfg.sitecount_measure = SuccessMeasure::Unconditional;
        } else {
            throw ConfigError("sitecount_measure: expected \"conditional\" or \"unconditional\"");
        }
    }
    if (e.workers < 0) {
        throw ConfigError("workers: must be non-negative");
    }
    if (cfg.validate.n_trajectories < 1 || cfg.validate.n_configs < 1) {
        throw ConfigError("validate_trajectories/validate_configs: must be positive");
    }
    cfg.validate.seed = e.seed;
    cfg.validate.workers = e.workers;
    try {
        e.validate();
    } catch (const std::invalid_argument &err) {
        throw ConfigError(err.what());
    }
    cfg.canonical_json = obj.dump();
    return cfg;
}

int cmd_sweep(const std::string &config_path, const std::string &out_dir, std::ostream &log) {
    return guarded(log, [&] {
        auto cfg = parse_config(read_file(config_path), Command::Sweep);
        const auto &e = cfg.experiment;
        auto started = utc_now();
        auto result = sweep(e);

        std::string sweep_csv = csv_row({"depth", "gap", "p", "mean_delta_L", "mean_p_ps", "mean_delta_s",
                                         "weighted_delta", "n_circuits", "engine", "seed"});
        for (const auto &pt : result.points()) {
            sweep_csv += csv_row({std::to_string(pt.depth), std::to_string(pt.gap), format_double(pt.p),
                                  format_double(pt.mean_delta_l), format_double(pt.mean_p_ps),
                                  format_double(pt.mean_delta_s), format_double(pt.weighted),
                                  std::to_string(pt.n_circuits), engine_name(e.engine), std::to_string(e.seed)});
        }
        std::string thr_csv = csv_row({"depth", "gap", "threshold", "q2", "q1", "q0", "l1", "l0", "residual_q",
                                       "residual_l", "status"});
        std::string ps_csv = csv_row({"depth", "gap", "M", "threshold", "p_ps_at_threshold", "sitecount_threshold",
                                      "sitecount_ps_bound_at_threshold"});
        json cells = json::array();
        for (const auto &cell : result.cells) {
            const auto &t = cell.threshold;
            thr_csv += csv_row({std::to_string(t.depth), std::to_string(t.gap), fmt_opt(t.threshold),
                                format_double(t.quadratic[0]), format_double(t.quadratic[1]),
                                format_double(t.quadratic[2]), format_double(t.linear[0]),
                                format_double(t.linear[1]), format_double(t.residual_q), format_double(t.residual_l),
                                t.status == FitStatus::Ok ? "ok" : "no_crossing"});
            int M = count_scheduled_rounds(cell.depth, cell.gap, e.schedule);
            std::optional<double> bound;
            if (t.threshold) {
                bound = ps_bound(SiteCountParams{cell.depth, M, *t.threshold});
            }
            ps_csv += csv_row({std::to_string(cell.depth), std::to_string(cell.gap), std::to_string(M),
                               fmt_opt(t.threshold), fmt_opt(cell.p_ps_at_threshold),
                               format_double(sitecount_threshold(cell.depth, M, cfg.sitecount_measure)),
                               fmt_opt(bound)});
            cells.push_back({{"depth", cell.depth},
                             {"gap", cell.gap},
                             {"pilot_estimate", cell.grid.pilot_estimate},
                             {"grid", cell.grid.grid},
                             {"dropped_fully_rejected", cell.grid.dropped}});
        }

        OutputDir out(out_dir);
        out.write("sweep.csv", sweep_csv);
        out.write("thresholds.csv", thr_csv);
        out.write("postselection.csv", ps_csv);
        auto m = manifest_base("sweep", cfg, started);
        m["finished_at"] = utc_now();
        m["outputs"] = out.digests();
        m["metadata"] = {
            {"grid_policy",
             e.p_grid.empty()
                 ? json{{"mode", "auto"},
                        {"pilot_points", e.grid.pilot_points},
                        {"pilot_min", e.grid.pilot_min},
                        {"pilot_max", e.grid.pilot_max},
                        {"refine_steps", e.grid.refine_steps},
                        {"points", e.grid.points},
                        {"span", e.grid.span},
                        {"floor", e.grid.floor},
                        {"ceiling", e.grid.ceiling}}
                 : json{{"mode", "explicit"}, {"p_grid", e.p_grid}}},
            {"cells", cells},
            {"linear_fit", "affine (with intercept)"},
            {"quadratic_fit", "unweighted least squares, full quadratic"},
            {"weighting", weighting_name(e.weighting)},
            {"circuit_reuse", "the same circuit sample is reused across every p and gap at a given depth"},
            {"n_circuits", e.n_circuits},
            {"n_trajectories", e.engine == EngineKind::Stabilizer ? json(e.n_trajectories) : json(nullptr)},
            {"workers", resolve_workers(e.workers)},
        };
        out.write("manifest.json", m.dump(2) + "\n");
        log << "wrote " << result.cells.size() << " (depth, gap) cells to " << out_dir << "\n";
        return 0;
    });
}

int cmd_sitecount(const std::string &config_path, const std::string &out_dir, std::ostream &log) {
    return guarded(log, [&] {
        auto cfg = parse_config(read_file(config_path), Command::Sitecount);
        auto started = utc_now();
        const auto &depths = cfg.experiment.depths;
        std::string table = csv_row({"T", "M", "gap", "threshold", "ps_at_threshold", "validity"});
        for (const auto &row : sitecount_table(depths, cfg.sitecount_measure)) {
            table += csv_row({std::to_string(row.T), std::to_string(row.M), std::to_string(row.gap),
                              format_double(row.threshold), format_double(row.ps_at_threshold),
                              row.valid ? "valid" : "clamped"});
        }
        std::string best = csv_row({"T", "gap", "M", "threshold"});
        for (int T : depths) {
            auto g = optimal_gap(T, cfg.sitecount_measure);
            best += csv_row({std::to_string(T), std::to_string(g.gap), std::to_string(g.M),
                             format_double(g.threshold)});
        }
        OutputDir out(out_dir);
        out.write("sitecount.csv", table);
        out.write("optimal_gaps.csv", best);
        auto m = manifest_base("sitecount", cfg, started);
        m["finished_at"] = utc_now();
        m["outputs"] = out.digests();
        m["metadata"] = {
            {"success_measure",
             cfg.sitecount_measure == SuccessMeasure::Conditional ? "conditional" : "unconditional"},
            {"gap_convention", "gap = T / M over divisors of T; ties toward the larger gap"},
            {"p_max", kSiteCountPMax},
        };
        out.write("manifest.json", m.dump(2) + "\n");
        return 0;
    });
}

int cmd_validate(const std::string &config_path, const std::string &out_dir, std::ostream &log) {
    return guarded(log, [&] {
        auto cfg = parse_config(read_file(config_path), Command::Validate);
        auto started = utc_now();
        auto results = run_all_checks(cfg.validate);
        json checks = json::array();
        const CheckResult *first_failure = nullptr;
        for (const auto &r : results) {
            checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            if (!r.passed && !first_failure) {
                first_failure = &r;
            }
        }
        OutputDir out(out_dir);
        out.write("validate.json", json{{"passed", first_failure == nullptr}, {"checks", checks}}.dump(2) + "\n");
        auto m = manifest_base("validate", cfg, started);
        m["finished_at"] = utc_now();
        m["outputs"] = out.digests();
        out.write("manifest.json", m.dump(2) + "\n");
        if (first_failure) {
            log << "check failed: " << first_failure->name << ": " << first_failure->detail << "\n";
            return 1;
        }
        log << "all " << results.size() << " checks passed\n";
        return 0;
    });
}

int run_cli(int argc, char **argv) {
    CLI::App app{"Simulator for the four-qubit Bacon-Shor error-detection scheme."};
    app.require_subcommand(1);
    std::string config_path, out_dir;
    auto add = [&](const char *name, const char *help) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Flat JSON config file")->required();
        sub->add_option("--out", out_dir, "Output directory")->required();
        return sub;
    };
    auto *sweep_cmd = add("sweep", "Depolarizing-noise threshold sweep");
    auto *sitecount_cmd = add("sitecount", "Site-counting bounds and optimal gaps");
    auto *validate_cmd = add("validate", "Invariant and cross-engine checks");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (sweep_cmd->parsed()) {
        return cmd_sweep(config_path, out_dir, std::cerr);
    }
    if (sitecount_cmd->parsed()) {
        return cmd_sitecount(config_path, out_dir, std::cerr);
    }
    if (validate_cmd->parsed()) {
        return cmd_validate(config_path, out_dir, std::cerr);
    }
    return 2;
}

}  // namespace baconshor
