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

#include "bellspace/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellspace/states.hpp"

namespace bellspace::random {

double Source::normal() {
    // 1 - u keeps the logarithm finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BlochVector Source::unit_vector() {
    BlochVector v;
    do {
        v << normal(), normal(), normal();
    } while (v.norm() < 1e-9);
    return v.normalized();
}

BlochVector Source::ball_vector() { return unit_vector() * std::cbrt(uniform()); }

QubitKet Source::qubit_ket() {
    QubitKet k;
    k << std::complex<double>(normal(), normal()), std::complex<double>(normal(), normal());
    return k.normalized();
}

TwoQubitKet Source::two_qubit_ket() {
    TwoQubitKet k;
    for (int i = 0; i < 4; ++i) k(i) = std::complex<double>(normal(), normal());
    return k.normalized();
}

QubitOperator Source::qubit_density() { return density_from_bloch(ball_vector()); }

TwoQubitState Source::two_qubit_density() {
    TwoQubitOperator g;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) g(i, j) = std::complex<double>(normal(), normal());
    }
    TwoQubitState rho = g * g.adjoint();
    return rho / rho.trace().real();
}

TwoQubitState Source::separable(int max_terms) {
    const int terms = 1 + static_cast<int>(uniform() * max_terms) % max_terms;
    std::vector<double> weights(terms);
    double total = 0.0;
    for (double &w : weights) total += (w = uniform() + 1e-3);
    TwoQubitState rho = TwoQubitState::Zero();
    for (double w : weights) rho += (w / total) * states::product(ball_vector(), ball_vector());
    return rho;
}

optics::PolarizationSetting Source::setting() {
    const BlochVector v = unit_vector();
    return optics::PolarizationSetting::canonical(std::acos(std::clamp(v.z(), -1.0, 1.0)), std::atan2(v.y(), v.x()));
}

optics::ArmConfig Source::arm() {
    optics::ArmConfig arm;
    const double ax = uniform(0.0, std::numbers::pi / 2), ay = uniform(0.0, std::numbers::pi / 2);
    arm.bs = {std::cos(ax), std::cos(ay), std::sin(ax), std::sin(ay)};
    arm.omega1 = setting();
    arm.omega2 = setting();
    return arm;
}

optics::ArmConfig Source::nonpolarizing_arm() {
    optics::ArmConfig arm;
    const double a = uniform(0.0, std::numbers::pi / 2);
    arm.bs = {std::cos(a), std::cos(a), std::sin(a), std::sin(a)};
    arm.omega1 = setting();
    arm.omega2 = setting();
    return arm;
}

QubitOperator Source::hermitian() {
    BlochVector v;
    v << normal(), normal(), normal();
    return op_from_bloch(normal(), v);
}

}  // namespace bellspace::random
