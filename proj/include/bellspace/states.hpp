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

// Named two-qubit states. Basis order |00>, |01>, |10>, |11> with subsystem A
// as the first (most significant) qubit.

#include "bellspace/qcore.hpp"

namespace bellspace::states {

/// (|01> - |10>) / sqrt(2)
TwoQubitState singlet();

/// rho_A(s_A) (x) rho_B(s_B). Throws DomainError if either |s| > 1.
TwoQubitState product(const BlochVector &s_a, const BlochVector &s_b);

/// eta |singlet><singlet| + (1 - eta) I / 4. Throws DomainError unless eta in [0, 1].
TwoQubitState werner(double eta);

/// |psi><psi|. Throws DomainError unless the amplitudes are normalized.
TwoQubitState pure(const TwoQubitKet &amplitudes);

/// Throws DomainError with the report's description unless rho is a valid density matrix.
void require_valid(const TwoQubitState &rho);

}  // namespace bellspace::states
