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

// One subsystem's measuring arrangement: a lossless beam splitter mixing the
// signal with vacuum, an SU(2) polarization box on each output port, and a
// polarizing beam splitter in front of two detectors per port.

#include <array>
#include <string>

#include "bellspace/qcore.hpp"

namespace bellspace::optics {

/// Real, nonnegative amplitude coefficients. Normalization t^2 + r^2 = 1 per
/// polarization is checked by validate_arm, not enforced on construction.
struct BeamSplitter {
    double t_x = 1.0;
    double t_y = 1.0;
    double r_x = 0.0;
    double r_y = 0.0;

    /// Same coefficients for both polarizations.
    static BeamSplitter nonpolarizing(double r);
};

/// Polarization setting (theta, phi) on the Poincare sphere.
struct PolarizationSetting {
    double theta = 0.0;
    double phi = 0.0;

    /// Maps any (theta, phi) onto theta in [0, pi], phi in [0, 2 pi) without
    /// changing the Poincare vector.
    static PolarizationSetting canonical(double theta, double phi);
};

struct ArmConfig {
    BeamSplitter bs;
    PolarizationSetting omega1;  // box on output 1 (reflected port)
    PolarizationSetting omega2;  // box on output 2 (transmitted port)
};

enum class Detector { k1x = 0, k1y = 1, k2x = 2, k2y = 3 };

inline constexpr std::array<Detector, 4> kDetectors{Detector::k1x, Detector::k1y, Detector::k2x, Detector::k2y};

std::string to_string(Detector d);

/// Unnormalized detector states; the click probability of detector d on input
/// |psi> is |<psi_d|psi>|^2. Indexed by Detector.
struct DetectorStates {
    std::array<QubitKet, 4> psi;

    const QubitKet &operator[](Detector d) const { return psi[static_cast<int>(d)]; }

    /// |psi_d><psi_d|
    QubitOperator projector(Detector d) const { return outer((*this)[d]); }
};

/// (sin theta cos phi, sin theta sin phi, cos theta)
BlochVector poincare(const PolarizationSetting &omega);

DetectorStates detector_states(const ArmConfig &arm);

/// Click probabilities of the four detectors, in Detector order.
using ClickProbabilities = std::array<double, 4>;

/// Independent route to the click statistics: propagates the single photon
/// through the four-mode beam-splitter transformation, then projects each
/// output port onto the eigenstates selected by its polarization box.
/// Throws DomainError for an unnormalized input.
ClickProbabilities fock_output_oracle(const QubitKet &input, const ArmConfig &arm);

/// |<psi_d|input>|^2 for each detector.
ClickProbabilities click_probabilities(const QubitKet &input, const ArmConfig &arm);

struct ArmReport {
    double x_normalization_residual = 0;  // t_x^2 + r_x^2 - 1
    double y_normalization_residual = 0;
    double completeness_residual = 0;     // max |sum_d |psi_d><psi_d| - sigma_0|
    bool coefficients_in_range = true;    // all in [0, 1]

    bool valid(double tolerance = tol::kAlgebra) const;
    std::string describe(double tolerance = tol::kAlgebra) const;
};

ArmReport validate_arm(const ArmConfig &arm);

}  // namespace bellspace::optics
