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

#include <vector>

namespace baconshor {

constexpr double kSitesPrep = 6;    // N_A
constexpr double kSitesRound = 18;  // N_B

/// Real-valued binomial x(x-1)/2; the per-block site count is a fractional average.
double pairs(double x);

struct SiteCountParams {
    int T = 1;
    int M = 0;
    double p = 0.0;

    /// Physical gates per block between measurements, (8/3)T/(M+1).
    double N() const;
    void validate() const;
};

/// Lower bound on 1 - p_l, clamped to [0, 1].
double logical_success_bound(const SiteCountParams &params);
/// Lower bound on the post-selection probability, clamped to [0, 1].
double ps_bound(const SiteCountParams &params);
/// False where some factor of either bound left [0, 1] before clamping.
bool bounds_valid(const SiteCountParams &params);

double unencoded_success(int T, double p);

enum class SuccessMeasure {
    // 1 - (1 - logical_success_bound) / ps_bound: the logical-failure bound conditioned on acceptance.
    Conditional,
    // logical_success_bound as is.
    Unconditional,
};

double encoded_success(const SiteCountParams &params, SuccessMeasure measure = SuccessMeasure::Conditional);

constexpr double kSiteCountPMax = 0.1;

/// Largest p in (0, p_max] with the encoded success at least the unencoded one on all of (0, p].
double sitecount_threshold(int T, int M, SuccessMeasure measure = SuccessMeasure::Conditional,
                           double p_max = kSiteCountPMax, double tolerance = 1e-7);

struct GapChoice {
    int gap = 0;
    int M = 0;
    double threshold = 0.0;
};

/// Candidate gaps are the divisors of T with M = T / gap; ties go to the larger gap.
GapChoice optimal_gap(int T, SuccessMeasure measure = SuccessMeasure::Conditional);

struct SiteCountRow {
    int T = 0;
    int M = 0;
    int gap = 0;
    double threshold = 0.0;
    double ps_at_threshold = 0.0;
    bool valid = true;
};

/// One row per divisor gap of each depth.
std::vector<SiteCountRow> sitecount_table(const std::vector<int> &depths,
                                          SuccessMeasure measure = SuccessMeasure::Conditional);

}  // namespace baconshor
