// Copyright 2026 The hybridqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "hybridqc/quantum_geometry.hpp"

namespace hqc {

// SplitMix64 finalizer applied to (seed, stream). Particle i of a cloud drawn
// with seed s uses stream i, so draws do not depend on the worker layout.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Per-particle random source. The engine is mt19937_64, whose output sequence
// is fixed by the standard; uniform and normal deviates are produced here
// rather than through <random> distributions, which vary across libraries.
class ParticleRng {
public:
    ParticleRng(std::uint64_t seed, std::uint64_t stream);

    double uniform();  // [0, 1)
    double normal();   // Box-Muller

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Uniform (rotation-invariant) unit vector in C^d: 2d standard normals,
// normalized.
CVector haar_state(Eigen::Index d, ParticleRng& rng);

}  // namespace hqc
