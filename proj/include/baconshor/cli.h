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

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "baconshor/checks.h"
#include "baconshor/experiment.h"
#include "baconshor/sitecount.h"

namespace baconshor {

constexpr const char *kVersion = "0.1.0";

/// Config schema violation; the message starts with the offending key. Maps to exit status 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Command { Sweep, Sitecount, Validate };

struct CliConfig {
    ExperimentConfig experiment;
    SuccessMeasure sitecount_measure = SuccessMeasure::Conditional;
    ValidateOptions validate;
    std::string canonical_json;  // the parsed config, re-serialized
};

/// Parses a flat JSON object. Unknown keys are errors; `depths` is required for sweep and sitecount.
CliConfig parse_config(const std::string &text, Command command);

std::string format_double(double v);
std::string sha256_hex(const std::string &bytes);

int cmd_sweep(const std::string &config_path, const std::string &out_dir, std::ostream &log);
int cmd_sitecount(const std::string &config_path, const std::string &out_dir, std::ostream &log);
int cmd_validate(const std::string &config_path, const std::string &out_dir, std::ostream &log);

int run_cli(int argc, char **argv);

}  // namespace baconshor
