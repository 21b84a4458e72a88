// Copyright 2026 The bellspace Authors
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

// Seeded generators for randomized checks. Everything draws from SplitMix64 so
// a seed reproduces the same instances everywhere.

#include <cstdint>

#include "bellspace/optics.hpp"
#include "bellspace/stats.hpp"

namespace bellspace::random {

class Source {
   public:
    explicit Source(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return rng_.next_double(); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int sign() { return (rng_.next() >> 63) ? -1 : +1; }
    /// Box-Muller
    double normal();

    /// Uniform on the unit sphere.
    BlochVector unit_vector();
    /// Uniform in the unit ball.
    BlochVector ball_vector();
    QubitKet qubit_ket();
    TwoQubitKet two_qubit_ket();
    /// Uniform Bloch-ball qubit state.
    QubitOperator qubit_density();
    /// G G^dagger / tr with complex Gaussian G (Hilbert-Schmidt measure).
    TwoQubitState two_qubit_density();
    /// Convex mixture of 1..max_terms product states with random weights.
    TwoQubitState separable(int max_terms = 4);
    /// Random angles, independent t_x and t_y.
    optics::ArmConfig arm();
    /// Random angles, t_x = t_y.
    optics::ArmConfig nonpolarizing_arm();
    optics::PolarizationSetting setting();
    QubitOperator hermitian();

   private:
    stats::SplitMix64 rng_;
};

}  // namespace bellspace::random
