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

#include "baconshor/sitecount.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace baconshor {

double pairs(double x) {
    if (x < 0) {
        throw std::invalid_argument("pairs: argument must be non-negative.");
    }
    return x * (x - 1) / 2;
}

double SiteCountParams::N() const {
    return 8.0 / 3.0 * double(T) / double(M + 1);
}

void SiteCountParams::validate() const {
    if (T < 1) {
        throw std::invalid_argument("T must be at least 1.");
    }
    if (M < 0) {
        throw std::invalid_argument("M must be non-negative.");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1].");
    }
}

namespace {

double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

double product_bound(const SiteCountParams &s, double first, double per_round) {
    return clamp01(clamp01(first) * std::pow(clamp01(per_round), s.M));
}

}  // namespace

double logical_success_bound(const SiteCountParams &params) {
    params.validate();
    double p2 = params.p * params.p;
    double n = params.N();
    return product_bound(params, 1 - pairs(kSitesPrep + n) * p2, 1 - pairs(kSitesRound + n) * p2);
}

double ps_bound(const SiteCountParams &params) {
    params.validate();
    double n = params.N();
    return product_bound(params, 1 - (kSitesPrep + n) * params.p, 1 - (kSitesRound + n) * params.p);
}

bool bounds_valid(const SiteCountParams &params) {
    params.validate();
    double n = params.N();
    double p = params.p;
    bool first = (kSitesPrep + n) * p <= 1 && pairs(kSitesPrep + n) * p * p <= 1;
    bool rounds = params.M == 0 || ((kSitesRound + n) * p <= 1 && pairs(kSitesRound + n) * p * p <= 1);
    return first && rounds;
}

double unencoded_success(int T, double p) {
    return 1 - std::min(double(T) * p, 1.0);
}

double encoded_success(const SiteCountParams &params, SuccessMeasure measure) {
    double lsb = logical_success_bound(params);
    if (measure == SuccessMeasure::Unconditional) {
        return lsb;
    }
    double psb = ps_bound(params);
    if (psb <= 0) {
        return -1;  // nothing is accepted; the encoded side cannot win
    }
    return 1 - (1 - lsb) / psb;
}

double sitecount_threshold(int T, int M, SuccessMeasure measure, double p_max, double tolerance) {
    SiteCountParams params{T, M, 0.0};
    params.validate();
    auto wins = [&](double p) {
        params.p = p;
        return encoded_success(params, measure) >= unencoded_success(T, p);
    };
    // The comparison can flip more than once, so locate the first failure on a fine scan
    // before bisecting.
    constexpr int kScan = 20000;
    double step = p_max / kScan;
    double good = 0;
    for (int i = 1; i <= kScan; i++) {
        double p = step * i;
        if (!wins(p)) {
            double bad = p;
            while (bad - good > tolerance) {
                double mid = 0.5 * (good + bad);
                (wins(mid) ? good : bad) = mid;
            }
            return good;
        }
        good = p;
    }
    return p_max;
}

GapChoice optimal_gap(int T, SuccessMeasure measure) {
    if (T < 1) {
        throw std::invalid_argument("T must be at least 1.");
    }
    GapChoice best;
    bool have = false;
    for (int gap = 1; gap <= T; gap++) {
        if (T % gap != 0) {
            continue;
        }
        int M = T / gap;
        double t = sitecount_threshold(T, M, measure);
        if (!have || t >= best.threshold) {
            best = {gap, M, t};
            have = true;
        }
    }
    return best;
}

std::vector<SiteCountRow> sitecount_table(const std::vector<int> &depths, SuccessMeasure measure) {
    std::vector<SiteCountRow> rows;
    for (int T : depths) {
        for (int gap = 1; gap <= T; gap++) {
            if (T % gap != 0) {
                continue;
            }
            SiteCountRow row;
            row.T = T;
            row.gap = gap;
            row.M = T / gap;
            row.threshold = sitecount_threshold(T, row.M, measure);
            SiteCountParams at{T, row.M, row.threshold};
            row.ps_at_threshold = ps_bound(at);
            row.valid = bounds_valid(at);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace baconshor
