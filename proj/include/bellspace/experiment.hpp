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

// A full two-party experiment: a state, one arm per subsystem, the outcome
// labeling (probability space 1 or 2) and the Bell choice.

#include <span>
#include <string>
#include <vector>

#include "bellspace/optics.hpp"
#include "bellspace/space1.hpp"
#include "bellspace/space2.hpp"
#include "bellspace/stats.hpp"

namespace bellspace {

struct StateSpec {
    enum class Kind { singlet, product, werner, pure };

    Kind kind = Kind::singlet;
    BlochVector s_a = BlochVector::Zero();  // product
    BlochVector s_b = BlochVector::Zero();  // product
    double eta = 1.0;                        // werner
    TwoQubitKet amplitudes = TwoQubitKet::Zero();  // pure

    TwoQubitState build() const;
};

std::string to_string(StateSpec::Kind kind);

struct Experiment {
    StateSpec state;
    optics::ArmConfig arm_a;
    optics::ArmConfig arm_b;
    int space = 1;
    space1::BellChoice choice;
};

/// Space-1 table (axes j, k, alpha, beta) or space-2 table (j_A, k_A, j_B, k_B)
/// according to experiment.space.
stats::ProbTable joint_table(const Experiment &experiment);

/// Names accepted by with_parameters:
///   armA.omega1.theta, armA.omega1.phi, armA.omega2.theta, armA.omega2.phi (and armB.*)
///   armA.r, armB.r   reflection amplitude; space 1 sets a nonpolarizing splitter,
///                    space 2 the particular-case layout t_x = r_y = t, t_y = r_x = r
///   state.eta        Werner weight (state must be a Werner state)
const std::vector<std::string> &parameter_names();

enum class ParameterKind { angle, unit_interval };

/// Throws std::invalid_argument for unknown names.
ParameterKind parameter_kind(const std::string &name);

/// Copy of `base` with the named parameters replaced. Angles may be any real
/// number; each polarization setting is canonicalized after all of its
/// coordinates are set. Amplitudes and eta are clamped to [0, 1].
Experiment with_parameters(const Experiment &base, std::span<const std::string> names,
                           std::span<const double> values);

/// Current value of a parameter in `experiment`.
double parameter_value(const Experiment &experiment, const std::string &name);

}  // namespace bellspace
