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

#include "bellspace/states.hpp"

#include <cmath>

namespace bellspace::states {

TwoQubitState singlet() {
    TwoQubitKet psi;
    psi << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
    return outer(psi);
}

TwoQubitState product(const BlochVector &s_a, const BlochVector &s_b) {
    if (s_a.norm() > 1.0 + tol::kValidity || s_b.norm() > 1.0 + tol::kValidity) {
        throw DomainError("product state: Bloch vector outside the unit ball");
    }
    return tensor(density_from_bloch(s_a), density_from_bloch(s_b));
}

TwoQubitState werner(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("werner state: eta must lie in [0, 1]");
    return eta * singlet() + (1.0 - eta) / 4.0 * TwoQubitState::Identity();
}

TwoQubitState pure(const TwoQubitKet &amplitudes) {
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol::kValidity) {
        throw DomainError("pure state amplitudes are not normalized (sum |c|^2 = " + std::to_string(norm2) + ")");
    }
    return outer(amplitudes);
}

void require_valid(const TwoQubitState &rho) {
    const DensityReport report = validate_density(rho);
    if (!report.valid()) throw DomainError("invalid two-qubit state: " + report.describe());
}

}  // namespace bellspace::states
