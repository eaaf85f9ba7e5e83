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

#include "baconshor/distribution.h"

#include <cmath>
#include <stdexcept>

namespace baconshor {

namespace {

void check_normalized(const Distribution2 &d) {
    if (d[0] < -1e-12 || d[1] < -1e-12 || std::abs(d[0] + d[1] - 1.0) > 1e-9) {
        throw std::invalid_argument("Distribution is not normalized.");
    }
}

}  // namespace

double tvd(const Distribution2 &a, const Distribution2 &b) {
    check_normalized(a);
    check_normalized(b);
    return 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]));
}

}  // namespace baconshor
