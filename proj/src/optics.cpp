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

#include "bellspace/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bellspace::optics {

namespace {

using C = std::complex<double>;

// Output modes of the one-photon sector, in this order.
enum Mode { k1x = 0, k2x = 1, k1y = 2, k2y = 3 };

}  // namespace

BeamSplitter BeamSplitter::nonpolarizing(double r) {
    const double t = std::sqrt(std::max(0.0, 1.0 - r * r));
    return BeamSplitter{t, t, r, r};
}

PolarizationSetting PolarizationSetting::canonical(double theta, double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0) theta += two_pi;
    if (theta > std::numbers::pi) {
        // (2 pi - theta, phi + pi) is the same point of the sphere.
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return {theta, phi};
}

std::string to_string(Detector d) {
    switch (d) {
        case Detector::k1x:
            return "D1x";
        case Detector::k1y:
            return "D1y";
        case Detector::k2x:
            return "D2x";
        case Detector::k2y:
            return "D2y";
    }
    return "?";
}

BlochVector poincare(const PolarizationSetting &omega) {
    return {std::sin(omega.theta) * std::cos(omega.phi), std::sin(omega.theta) * std::sin(omega.phi),
            std::cos(omega.theta)};
}

DetectorStates detector_states(const ArmConfig &arm) {
    const auto &bs = arm.bs;
    const double c1 = std::cos(arm.omega1.theta / 2), s1 = std::sin(arm.omega1.theta / 2);
    const double c2 = std::cos(arm.omega2.theta / 2), s2 = std::sin(arm.omega2.theta / 2);
    const C e1 = std::polar(1.0, arm.omega1.phi);
    const C e2 = std::polar(1.0, arm.omega2.phi);

    DetectorStates out;
    out.psi[0] << bs.r_x * c1, bs.r_y * e1 * s1;
    out.psi[1] << -bs.r_x * s1, bs.r_y * e1 * c1;
    out.psi[2] << bs.t_x * c2, bs.t_y * e2 * s2;
    out.psi[3] << -bs.t_x * s2, bs.t_y * e2 * c2;
    return out;
}

ClickProbabilities fock_output_oracle(const QubitKet &input, const ArmConfig &arm) {
    require_normalized(input);
    const auto &bs = arm.bs;

    // Annihilation operators: a_out = M a_in with inputs ordered
    // (a_x, a_0x, a_y, a_0y) and outputs (a_1x, a_2x, a_1y, a_2y):
    //   a_1x = t_x a_0x + r_x a_x,   a_2x = t_x a_x - r_x a_0x,
    //   a_1y = t_y a_0y + r_y a_y,   a_2y = t_y a_y - r_y a_0y.
    Eigen::Matrix4d mixing = Eigen::Matrix4d::Zero();
    mixing(k1x, 0) = bs.r_x;
    mixing(k1x, 1) = bs.t_x;
    mixing(k2x, 0) = bs.t_x;
    mixing(k2x, 1) = -bs.r_x;
    mixing(k1y, 2) = bs.r_y;
    mixing(k1y, 3) = bs.t_y;
    mixing(k2y, 2) = bs.t_y;
    mixing(k2y, 3) = -bs.r_y;

    // A single photon sum_i c_i a_in_i^dagger |0> leaves as sum_o (M c)_o a_out_o^dagger |0>
    // when M is unitary. The auxiliary input ports carry vacuum.
    Eigen::Vector4cd in_amplitudes;
    in_amplitudes << input(0), C(0), input(1), C(0);
    const Eigen::Vector4cd out_amplitudes = mixing.cast<C>() * in_amplitudes;

    // Detection states in the output one-photon sector:
    // |Omega, +1> = cos(theta/2) |1>_x + e^{i phi} sin(theta/2) |1>_y,
    // |Omega, -1> = -sin(theta/2) |1>_x + e^{i phi} cos(theta/2) |1>_y.
    auto detection_state = [](const PolarizationSetting &omega, Mode x_mode, Mode y_mode, bool plus) {
        Eigen::Vector4cd phi_state = Eigen::Vector4cd::Zero();
        const double c = std::cos(omega.theta / 2), s = std::sin(omega.theta / 2);
        const C e = std::polar(1.0, omega.phi);
        phi_state(x_mode) = plus ? C(c) : C(-s);
        phi_state(y_mode) = e * (plus ? s : c);
        return phi_state;
    };

    const std::array<Eigen::Vector4cd, 4> targets{
        detection_state(arm.omega1, k1x, k1y, true),
        detection_state(arm.omega1, k1x, k1y, false),
        detection_state(arm.omega2, k2x, k2y, true),
        detection_state(arm.omega2, k2x, k2y, false),
    };
    ClickProbabilities probs{};
    for (int d = 0; d < 4; ++d) {
        probs[d] = std::norm(targets[d].dot(out_amplitudes));
    }
    return probs;
}

ClickProbabilities click_probabilities(const QubitKet &input, const ArmConfig &arm) {
    const DetectorStates states = detector_states(arm);
    ClickProbabilities probs{};
    for (int d = 0; d < 4; ++d) {
        probs[d] = std::norm(states.psi[d].dot(input));
    }
    return probs;
}

bool ArmReport::valid(double tolerance) const {
    return coefficients_in_range && std::abs(x_normalization_residual) <= tolerance &&
           std::abs(y_normalization_residual) <= tolerance && completeness_residual <= tolerance;
}

std::string ArmReport::describe(double tolerance) const {
    if (valid(tolerance)) return "valid";
    std::ostringstream out;
    const char *sep = "";
    if (!coefficients_in_range) {
        out << "coefficients outside [0, 1]";
        sep = "; ";
    }
    if (std::abs(x_normalization_residual) > tolerance) {
        out << sep << "t_x^2 + r_x^2 - 1 = " << x_normalization_residual;
        sep = "; ";
    }
    if (std::abs(y_normalization_residual) > tolerance) {
        out << sep << "t_y^2 + r_y^2 - 1 = " << y_normalization_residual;
        sep = "; ";
    }
    if (completeness_residual > tolerance) {
        out << sep << "completeness residual " << completeness_residual;
    }
    return out.str();
}

ArmReport validate_arm(const ArmConfig &arm) {
    const auto &bs = arm.bs;
    ArmReport report;
    report.x_normalization_residual = bs.t_x * bs.t_x + bs.r_x * bs.r_x - 1.0;
    report.y_normalization_residual = bs.t_y * bs.t_y + bs.r_y * bs.r_y - 1.0;
    for (double c : {bs.t_x, bs.t_y, bs.r_x, bs.r_y}) {
        if (!(c >= 0.0 && c <= 1.0)) report.coefficients_in_range = false;
    }
    const DetectorStates states = detector_states(arm);
    QubitOperator sum = QubitOperator::Zero();
    for (const auto &psi : states.psi) sum += outer(psi);
    report.completeness_residual = (sum - QubitOperator::Identity()).cwiseAbs().maxCoeff();
    return report;
}

}  // namespace bellspace::optics
