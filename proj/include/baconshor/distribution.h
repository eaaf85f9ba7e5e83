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

#include <array>

namespace baconshor {

/// Probability distribution over the two outcomes of a logical readout.
using Distribution2 = std::array<double, 2>;

inline Distribution2 point_mass(int bit) {
    return bit == 0 ? Distribution2{1.0, 0.0} : Distribution2{0.0, 1.0};
}

/// Total variation distance: half the L1 distance. Throws std::invalid_argument when either input is not
/// normalized to within 1e-9 or has a negative entry.
double tvd(const Distribution2 &a, const Distribution2 &b);

}  // namespace baconshor
