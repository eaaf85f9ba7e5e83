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

#include "baconshor/rng.h"

namespace baconshor {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

Rng derive_stream(uint64_t master_seed, std::initializer_list<uint64_t> path) {
    uint64_t h = splitmix64(master_seed);
    for (uint64_t v : path) {
        h = splitmix64(h ^ splitmix64(v));
    }
    uint64_t h2 = splitmix64(h);
    std::seed_seq seq{uint32_t(h), uint32_t(h >> 32), uint32_t(h2), uint32_t(h2 >> 32)};
    return Rng(seq);
}

}  // namespace baconshor
