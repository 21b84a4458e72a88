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

#include "bellspace/space2.hpp"

#include <cmath>
#include <numbers>

namespace bellspace::space2 {

namespace {

// Unit axis with its largest-magnitude component positive, and the signed
// length that goes with it.
std::pair<double, BlochVector> oriented(const BlochVector &v) {
    const double length = v.norm();
    if (length <= tol::kAlgebra) return {0.0, BlochVector::Zero()};
    BlochVector axis = v / length;
    int lead = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(axis(i)) > std::abs(axis(lead)) + tol::kAlgebra) lead = i;
    }
    if (axis(lead) < 0) return {-length, -axis};
    return {length, axis};
}

std::optional<GammaForm> extract_gamma_form(const Space2Povm &povm) {
    std::array<std::array<BlochDecomposition, 2>, 2> parts;
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) {
            parts[idx(j)][idx(k)] = bloch_decompose(povm.element(j, k));
            if (std::abs(parts[idx(j)][idx(k)].c0 - 0.25) > tol::kValidity) return std::nullopt;
        }
    }
    BlochVector a = BlochVector::Zero(), b = BlochVector::Zero(), c = BlochVector::Zero();
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) {
            const BlochVector &v = parts[idx(j)][idx(k)].v;
            a += j * v;
            b += k * v;
            c += j * k * v;
        }
    }
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) {
            const BlochVector fit = (j * a + k * b + j * k * c) / 4.0;
            if ((fit - parts[idx(j)][idx(k)].v).cwiseAbs().maxCoeff() > tol::kValidity) return std::nullopt;
        }
    }
    GammaForm form;
    const std::array<BlochVector, 3> raw{a, b, c};
    for (int i = 0; i < 3; ++i) {
        std::tie(form.gamma[i], form.axis[i]) = oriented(raw[i]);
    }
    // A vanishing factor leaves its axis undetermined; complete the frame
    // cyclically (X x Y -> XY, Y x XY -> X, XY x X -> Y) when the other two exist.
    for (int i = 0; i < 3; ++i) {
        const BlochVector &p = form.axis[(i + 1) % 3], &q = form.axis[(i + 2) % 3];
        if (form.gamma[i] == 0.0 && p.norm() > 0.5 && q.norm() > 0.5) {
            const BlochVector cross = p.cross(q);
            if (cross.norm() > tol::kValidity) form.axis[i] = oriented(cross).second;
        }
    }
    return form;
}

const GammaForm &require_gamma_form(const Space2Povm &povm, const char *who) {
    if (!povm.gamma_form) {
        throw PreconditionError(std::string(who) + ": POVM has no (gamma_X, gamma_Y, gamma_XY) form");
    }
    return *povm.gamma_form;
}

void require_normalized(const Eigen::Vector2d &p, const char *who) {
    if (std::abs(p.sum() - 1.0) > tol::kValidity) {
        throw PreconditionError(std::string(who) + ": distribution is not normalized");
    }
}

}  // namespace

stats::LabeledPovm Space2Povm::labeled(const std::string &j_axis, const std::string &k_axis) const {
    stats::LabeledPovm out;
    out.axes = {j_axis, k_axis};
    int n = 0;
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) out.elements[n++] = {{j, k}, element(j, k)};
    }
    return out;
}

Space2Povm povm_space2(const optics::ArmConfig &arm) {
    using optics::Detector;
    const optics::DetectorStates states = optics::detector_states(arm);
    Space2Povm povm;
    povm.elements[idx(+1)][idx(+1)] = states.projector(Detector::k1x);
    povm.elements[idx(-1)][idx(-1)] = states.projector(Detector::k1y);
    povm.elements[idx(+1)][idx(-1)] = states.projector(Detector::k2x);
    povm.elements[idx(-1)][idx(+1)] = states.projector(Detector::k2y);
    povm.gamma_form = extract_gamma_form(povm);
    return povm;
}

optics::ArmConfig particular_case_arm(double r, double t) {
    if (!(r >= 0.0 && t >= 0.0)) throw PreconditionError("particular_case_arm: r and t must be nonnegative");
    if (std::abs(r * r + t * t - 1.0) > tol::kAlgebra) {
        throw PreconditionError("particular_case_arm: r^2 + t^2 != 1");
    }
    optics::ArmConfig arm;
    arm.bs = {t, r, r, t};
    arm.omega1 = optics::PolarizationSetting::canonical(std::numbers::pi / 2, std::numbers::pi / 4);
    arm.omega2 = optics::PolarizationSetting::canonical(std::numbers::pi / 2, -std::numbers::pi / 4);
    return arm;
}

double minimal_tomography_r() { return std::sqrt((1.0 + 1.0 / std::sqrt(3.0)) / 2.0); }

NoisyMarginals noisy_marginals(const Space2Povm &povm, const QubitOperator &rho_a) {
    const GammaForm &form = require_gamma_form(povm, "noisy_marginals");
    NoisyMarginals out;
    for (int v : {+1, -1}) {
        out.delta_x[idx(v)] = povm.element(v, +1) + povm.element(v, -1);
        out.delta_y[idx(v)] = povm.element(+1, v) + povm.element(-1, v);
    }
    out.x = {'X', form.gamma_x(), form.axis[0], {}};
    out.y = {'Y', form.gamma_y(), form.axis[1], {}};
    for (int v : {+1, -1}) {
        out.x.probs(idx(v)) = expectation(rho_a, out.delta_x[idx(v)]);
        out.y.probs(idx(v)) = expectation(rho_a, out.delta_y[idx(v)]);
    }
    out.jk_mean = 0.0;
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) out.jk_mean += j * k * expectation(rho_a, povm.element(j, k));
    }
    return out;
}

Eigen::Matrix2d noise_kernel(double gamma) {
    Eigen::Matrix2d kernel;
    kernel << 1 + gamma, 1 - gamma, 1 - gamma, 1 + gamma;
    return kernel / 2.0;
}

Eigen::Matrix2d inversion_kernel(double gamma) {
    if (std::abs(gamma) <= tol::kAlgebra) throw SingularInversion("noise inversion with gamma = 0");
    const double g = 1.0 / gamma;
    Eigen::Matrix2d kernel;
    kernel << 1 + g, 1 - g, 1 - g, 1 + g;
    return kernel / 2.0;
}

Eigen::Vector2d noise_forward(const Eigen::Vector2d &p_exact, double gamma) {
    require_normalized(p_exact, "noise_forward");
    if (std::abs(gamma) > 1.0 + tol::kAlgebra) throw PreconditionError("noise_forward: |gamma| > 1");
    return noise_kernel(gamma) * p_exact;
}

Inverted noise_invert(const Eigen::Vector2d &p_noisy, double gamma) {
    require_normalized(p_noisy, "noise_invert");
    Inverted out;
    out.probs = inversion_kernel(gamma) * p_noisy;
    out.negative = out.probs.minCoeff() < 0.0;
    return out;
}

stats::ProbTable probabilities(const QubitOperator &rho_a, const Space2Povm &povm) {
    std::vector<double> entries;
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) entries.push_back(expectation(rho_a, povm.element(j, k)));
    }
    return stats::ProbTable({"j", "k"}, std::move(entries));
}

stats::ProbTable quasi_joint(const TwoQubitState &rho, const Space2Povm &povm_a, const Space2Povm &povm_b) {
    const GammaForm &fa = require_gamma_form(povm_a, "quasi_joint");
    const GammaForm &fb = require_gamma_form(povm_b, "quasi_joint");
    stats::ProbTable table = stats::joint_table(rho, povm_a.labeled("j_A", "k_A"), povm_b.labeled("j_B", "k_B"));
    table = stats::apply_axis_kernel(table, "j_A", inversion_kernel(fa.gamma_x()));
    table = stats::apply_axis_kernel(table, "k_A", inversion_kernel(fa.gamma_y()));
    table = stats::apply_axis_kernel(table, "j_B", inversion_kernel(fb.gamma_x()));
    table = stats::apply_axis_kernel(table, "k_B", inversion_kernel(fb.gamma_y()));
    return table;
}

TomographyEstimate tomography_reconstruct(const stats::ProbTable &p_observed, const Space2Povm &povm,
                                          const TomographyOptions &options) {
    const GammaForm &form = require_gamma_form(povm, "tomography_reconstruct");
    if (p_observed.rank() != 2) throw PreconditionError("tomography_reconstruct: expected a (j, k) table");
    for (double g : form.gamma) {
        if (std::abs(g) <= tol::kAlgebra) {
            throw SingularInversion("tomography_reconstruct: a gamma factor vanishes, POVM is not tomographically complete");
        }
    }
    Eigen::Matrix3d rows;
    for (int i = 0; i < 3; ++i) rows.row(i) = form.gamma[i] * form.axis[i].transpose();
    if (std::abs(rows.determinant()) <= tol::kAlgebra) {
        throw SingularInversion("tomography_reconstruct: measurement axes are linearly dependent");
    }

    Eigen::Vector3d moments = Eigen::Vector3d::Zero();  // <j>, <k>, <jk>
    for (int j : {+1, -1}) {
        for (int k : {+1, -1}) {
            const double p = p_observed.at({j, k});
            moments += p * Eigen::Vector3d(j, k, j * k);
        }
    }
    TomographyEstimate out;
    out.s = rows.partialPivLu().solve(moments);
    if (options.clamp_to_ball && out.s.norm() > 1.0) {
        out.s.normalize();
        out.clamped = true;
    }
    out.rho = density_from_bloch(out.s);
    out.report = validate_density(out.rho);
    return out;
}

}  // namespace bellspace::space2
