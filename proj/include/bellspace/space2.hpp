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

// Probability space 2: the same four clicks read as two dichotomic outcomes
// (j, k) of one noisy joint measurement.
//
//   D1x -> (+1, +1)   D1y -> (-1, -1)   D2x -> (+1, -1)   D2y -> (-1, +1)
//
// When the elements admit the form
//   Delta(j, k) = (sigma_0 + j g_X S_X.sigma + k g_Y S_Y.sigma + jk g_XY S_XY.sigma) / 4
// the marginals are attenuated versions of the sharp observables S_X.sigma and
// S_Y.sigma, and the jk product carries S_XY.sigma. The attenuation can be
// undone exactly, at the price of quasi-probabilities.

#include <array>
#include <optional>

#include "bellspace/optics.hpp"
#include "bellspace/stats.hpp"

namespace bellspace::space2 {

constexpr int idx(int value) { return value > 0 ? 0 : 1; }

/// Attenuation factors and axes of the element decomposition, in the order
/// (X, Y, XY). Each axis is a unit vector whose largest-magnitude component is
/// positive; the sign of the matching factor absorbs the orientation. A factor
/// of zero gets the axis completing the frame from the other two (cyclic cross
/// product), or a zero axis when that is not possible.
struct GammaForm {
    std::array<double, 3> gamma{};
    std::array<BlochVector, 3> axis{};

    double gamma_x() const { return gamma[0]; }
    double gamma_y() const { return gamma[1]; }
    double gamma_xy() const { return gamma[2]; }
};

struct Space2Povm {
    /// elements[idx(j)][idx(k)]
    std::array<std::array<QubitOperator, 2>, 2> elements;
    std::optional<GammaForm> gamma_form;

    const QubitOperator &element(int j, int k) const { return elements[idx(j)][idx(k)]; }

    stats::LabeledPovm labeled(const std::string &j_axis, const std::string &k_axis) const;
};

/// Elements from the detector states of any valid arm; gamma_form is empty
/// when the elements do not fit the four-term form above.
Space2Povm povm_space2(const optics::ArmConfig &arm);

/// t_x = r_y = t, t_y = r_x = r, theta_1 = theta_2 = pi/2, phi_1 = -phi_2 = pi/4
/// (phi_2 stored canonically as 7 pi/4). Gives g_X = g_Y = sqrt(2) r t,
/// g_XY = r^2 - t^2 along x, y, z. Throws PreconditionError unless r, t >= 0
/// and r^2 + t^2 = 1.
optics::ArmConfig particular_case_arm(double r, double t);

/// r with g_X = g_Y = g_XY = 1/sqrt(3): r^2 = (1 + 1/sqrt(3)) / 2.
double minimal_tomography_r();

struct NoisyMarginal {
    char variable = 'X';  // 'X' (outcome j) or 'Y' (outcome k)
    double gamma = 0.0;
    BlochVector axis = BlochVector::Zero();
    Eigen::Vector2d probs = Eigen::Vector2d::Zero();  // (p(+1), p(-1))
};

struct NoisyMarginals {
    NoisyMarginal x;
    NoisyMarginal y;
    std::array<QubitOperator, 2> delta_x;  // sum_k Delta(j, k)
    std::array<QubitOperator, 2> delta_y;  // sum_j Delta(j, k)
    /// E[jk] = g_XY <S_XY . sigma>
    double jk_mean = 0.0;
};

/// Throws PreconditionError when the POVM has no gamma form.
NoisyMarginals noisy_marginals(const Space2Povm &povm, const QubitOperator &rho_a);

/// (1/2)(1 + gamma k k') as a matrix indexed (idx(k'), idx(k)).
Eigen::Matrix2d noise_kernel(double gamma);
/// (1/2)(1 + k k' / gamma) as a matrix indexed (idx(k), idx(k')).
/// Throws SingularInversion for gamma = 0.
Eigen::Matrix2d inversion_kernel(double gamma);

/// p'(k') = sum_k (1/2)(1 + gamma k k') p(k). Requires normalized p and |gamma| <= 1.
Eigen::Vector2d noise_forward(const Eigen::Vector2d &p_exact, double gamma);

struct Inverted {
    Eigen::Vector2d probs;
    bool negative = false;
};

/// p(k) = sum_k' (1/2)(1 + k k' / gamma) p'(k'). May produce negative entries.
Inverted noise_invert(const Eigen::Vector2d &p_noisy, double gamma);

/// Exact probabilities tr[rho_A Delta(j, k)] with axes (j, k).
stats::ProbTable probabilities(const QubitOperator &rho_a, const Space2Povm &povm);

/// Noisy joint over (j_A, k_A, j_B, k_B) with every variable deconvolved by
/// its own inversion kernel. The result is a quasi-table.
stats::ProbTable quasi_joint(const TwoQubitState &rho, const Space2Povm &povm_a, const Space2Povm &povm_b);

struct TomographyOptions {
    /// Rescale estimates outside the Bloch ball onto its surface.
    bool clamp_to_ball = false;
};

struct TomographyEstimate {
    BlochVector s = BlochVector::Zero();
    QubitOperator rho = QubitOperator::Zero();
    DensityReport report;
    bool clamped = false;
};

/// Linear inversion from observed (j, k) frequencies: <j>, <k>, <jk> give the
/// projections g_X S_X.s, g_Y S_Y.s and g_XY S_XY.s. The table's first axis is
/// read as j and the second as k. Throws SingularInversion if any factor
/// vanishes or the axes are not linearly independent.
TomographyEstimate tomography_reconstruct(const stats::ProbTable &p_observed, const Space2Povm &povm,
                                          const TomographyOptions &options = {});

}  // namespace bellspace::space2
