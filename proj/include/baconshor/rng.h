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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace baconshor {

using Rng = std::mt19937_64;

/// Independent generator for the stream addressed by `path` under `master_seed`.
///
/// The stream depends only on (master_seed, path), so work items can be evaluated in any order or on any
/// worker and still draw identical numbers.
Rng derive_stream(uint64_t master_seed, std::initializer_list<uint64_t> path);

// Stream tags keep differently-purposed draws apart.
inline constexpr uint64_t kCircuitStreamTag = 0x6369726375697400ull;
inline constexpr uint64_t kTrajectoryStreamTag = 0x7472616a65637400ull;

}  // namespace baconshor
