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

#include "bellspace/space1.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "bellspace/random.hpp"
#include "bellspace/states.hpp"
#include "oracles.hpp"

using namespace bellspace;
using namespace bellspace::space1;

namespace {

constexpr double kTight = 1e-12;
constexpr double kPi = std::numbers::pi;

optics::ArmConfig arm(double r, optics::PolarizationSetting o1, optics::PolarizationSetting o2) {
    return {optics::BeamSplitter::nonpolarizing(r), o1, o2};
}

// S_{+1} = +z, S_{-1} = +x, r^2 = 0.64
Space1Povm z_x_povm() { return povm_space1(arm(0.8, {0, 0}, {kPi / 2, 0})); }

QubitOperator eigenprojector(const BlochVector &axis, int outcome) {
    return density_from_bloch(BlochVector(outcome * axis));
}

// The standard quantity from sharp projective statistics, bypassing the joint table.
double standard_from_projectors(const TwoQubitState &rho, const Space1Povm &a, const Space1Povm &b,
                                const BellChoice &c) {
    auto pjk = [&](int alpha, int beta) {
        return expectation(rho, tensor(eigenprojector(a.setting_vector(alpha), c.j),
                                       eigenprojector(b.setting_vector(beta), c.k)));
    };
    const double pj = expectation(partial_trace_second(rho), eigenprojector(a.setting_vector(-c.alpha), c.j));
    const double pk = expectation(partial_trace_first(rho), eigenprojector(b.setting_vector(c.beta), c.k));
    return pjk(c.alpha, c.beta) - pjk(c.alpha, -c.beta) + pjk(-c.alpha, c.beta) + pjk(-c.alpha, -c.beta) - pj - pk;
}

// Setting on the x-z great circle at Bloch angle `deg` from +z.
optics::PolarizationSetting planar(double deg) { return optics::PolarizationSetting::canonical(deg * kPi / 180, 0); }

}  // namespace

TEST(space1, povm_setting_probabilities) {
    const Space1Povm balanced = povm_space1(arm(1 / std::sqrt(2.0), {}, {}));
    EXPECT_NEAR(balanced.prob_alpha(+1), 0.5, kTight);
    EXPECT_NEAR(balanced.prob_alpha(-1), 0.5, kTight);
    const Space1Povm uneven = povm_space1({{0.6, 0.6, 0.8, 0.8}, {}, {}});
    EXPECT_NEAR(uneven.prob_alpha(+1), 0.64, kTight);
    EXPECT_NEAR(uneven.prob_alpha(-1), 0.36, kTight);
}

TEST(space1, povm_requires_nonpolarizing_splitter) {
    try {
        povm_space1({{0.6, 0.8, 0.8, 0.6}, {}, {}});
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError &e) {
        EXPECT_NE(std::string(e.what()).find("t_x != t_y"), std::string::npos);
    }
}

TEST(space1, povm_matches_closed_form_and_is_complete) {
    random::Source src(31);
    for (int i = 0; i < 500; ++i) {
        const Space1Povm povm = povm_space1(src.nonpolarizing_arm());
        QubitOperator sum = QubitOperator::Zero();
        for (int j : {+1, -1}) {
            for (int alpha : {+1, -1}) {
                const QubitOperator &e = povm.element(j, alpha);
                const QubitOperator closed =
                    povm.prob_alpha(alpha) * density_from_bloch(BlochVector(j * povm.setting_vector(alpha)));
                EXPECT_LE((e - closed).cwiseAbs().maxCoeff(), kTight);
                EXPECT_GE(hermitian_eigenvalues<double>(e).minCoeff(), -tol::kValidity);
                sum += e;
            }
        }
        EXPECT_LE((sum - QubitOperator::Identity()).cwiseAbs().maxCoeff(), kTight);
        EXPECT_NEAR(povm.prob_alpha(1) + povm.prob_alpha(-1), 1.0, kTight);
    }
}

TEST(space1, marginals_examples) {
    const Marginals cancel = marginals_space1(povm_space1(arm(1 / std::sqrt(2.0), {0, 0}, {kPi, 0})));
    EXPECT_LT(cancel.S_A.norm(), kTight);
    EXPECT_LT((cancel.delta_j[0] - QubitOperator::Identity() / 2.0).cwiseAbs().maxCoeff(), kTight);

    const Marginals m = marginals_space1(z_x_povm());
    EXPECT_LT((m.S_A - BlochVector(0.36, 0, 0.64)).norm(), kTight);
    EXPECT_LT((m.delta_j[0] + m.delta_j[1] - QubitOperator::Identity()).cwiseAbs().maxCoeff(), kTight);
    EXPECT_LT((m.delta_alpha[0] - 0.64 * QubitOperator::Identity()).cwiseAbs().maxCoeff(), kTight);
}

TEST(space1, conditional_examples) {
    const Space1Povm povm = z_x_povm();
    Conditionals c = conditional_stats(QubitOperator::Identity() / 2.0, povm);
    for (int a : {0, 1}) {
        for (int b : {0, 1}) EXPECT_NEAR(c.j_given_alpha(a, b), 0.5, kTight);
        EXPECT_NEAR(c.alpha_given_j(a, 0), povm.p_alpha[a], kTight);
    }

    c = conditional_stats(density_from_bloch(BlochVector(0, 0, 1)), povm);
    EXPECT_NEAR(c.j_given_alpha(idx(+1), idx(+1)), 1.0, kTight);

    // p(alpha=+1 | j=+1) = 0.64 * 1.5 / 1.32
    c = conditional_stats(density_from_bloch(BlochVector(0, 0, 0.5)), povm);
    EXPECT_NEAR(c.alpha_given_j(idx(+1), idx(+1)), 0.64 * 1.5 / 1.32, kTight);
    EXPECT_NEAR(c.alpha_given_j(idx(+1), idx(+1)), 0.727272727272727, 1e-12);
}

TEST(space1, conditionals_match_closed_forms) {
    random::Source src(32);
    for (int i = 0; i < 1000; ++i) {
        const Space1Povm povm = povm_space1(src.nonpolarizing_arm());
        const BlochVector s = src.ball_vector();
        const Conditionals c = conditional_stats(density_from_bloch(s), povm);
        const BlochVector S_A = marginals_space1(povm).S_A;
        for (int j : {+1, -1}) {
            for (int alpha : {+1, -1}) {
                // Sharp statistics of A_alpha = S_alpha . sigma.
                EXPECT_NEAR(c.j_given_alpha(idx(j), idx(alpha)), (1 + j * povm.setting_vector(alpha).dot(s)) / 2,
                            kTight);
                const double closed =
                    povm.prob_alpha(alpha) * (1 + j * povm.setting_vector(alpha).dot(s)) / (1 + j * S_A.dot(s));
                EXPECT_NEAR(c.alpha_given_j(idx(alpha), idx(j)), closed, 1e-10);
            }
        }
    }
}

TEST(space1, conditional_undefined_for_vanishing_outcome) {
    // Both settings +z make S_A = +z; the south-pole state never gives j = +1.
    const Space1Povm povm = povm_space1(arm(0.8, {0, 0}, {0, 0}));
    try {
        conditional_stats(density_from_bloch(BlochVector(0, 0, -1)), povm);
        FAIL() << "expected ConditionalUndefined";
    } catch (const ConditionalUndefined &e) {
        EXPECT_EQ(e.event(), "p(j=+1)");
    }
}

TEST(space1, gleason_examples) {
    const Space1Povm cancel = povm_space1(arm(1 / std::sqrt(2.0), {0, 0}, {kPi, 0}));
    const auto mixed = gleason_state_for_alpha(BlochVector::Zero(), cancel, +1);
    ASSERT_TRUE(mixed.has_value());
    EXPECT_LT((*mixed - QubitOperator::Identity() / 2.0).cwiseAbs().maxCoeff(), kTight);
    EXPECT_FALSE(gleason_state_for_alpha(BlochVector(0, 0, 0.5), cancel, +1).has_value());

    const Space1Povm povm = z_x_povm();
    const BlochVector s(0, 0, 0.5);
    const Marginals m = marginals_space1(povm);
    const Conditionals c = conditional_stats(density_from_bloch(s), povm);
    for (int alpha : {+1, -1}) {
        const auto rho = gleason_state_for_alpha(s, povm, alpha);
        ASSERT_TRUE(rho.has_value());
        EXPECT_TRUE(validate_density(*rho).valid());
        for (int j : {+1, -1}) {
            EXPECT_NEAR(expectation(*rho, m.delta_j[idx(j)]), c.j_given_alpha(idx(j), idx(alpha)), kTight);
        }
    }
}

TEST(space1, gleason_witness_agrees_with_ball_search) {
    // Oracle: scan the Bloch ball for any state whose marginal-POVM statistics
    // match p(j|alpha) to 1e-3.
    random::Source src(33);
    int existing = 0, missing = 0;
    for (int i = 0; i < 20; ++i) {
        const Space1Povm povm = povm_space1(src.nonpolarizing_arm());
        const BlochVector s = src.ball_vector();
        const int alpha = src.sign();
        const BlochVector S_A = marginals_space1(povm).S_A;
        const double target = s.dot(povm.setting_vector(alpha));
        const auto witness = gleason_state_for_alpha(s, povm, alpha);
        const bool condition = std::abs(target) <= S_A.norm();
        EXPECT_EQ(witness.has_value(), condition);
        if (std::abs(std::abs(target) - S_A.norm()) < 0.02) continue;  // too close for a 0.02 grid
        const bool found = oracle::ball_grid_has_witness(S_A, target);
        EXPECT_EQ(found, condition);
        (condition ? existing : missing)++;
    }
    EXPECT_GT(existing, 0);
    EXPECT_GT(missing, 0);
}

TEST(space1, nonpovm_check_examples) {
    const Space1Povm povm = z_x_povm();
    EXPECT_NEAR(p_alpha_given_j_nonpovm_check(QubitOperator::Identity() / 2.0, povm), 0.0, kTight);
    // Worst entry is p(alpha=+1 | j=-1) = 0.16 / 0.34 against p(alpha=+1) = 0.64.
    EXPECT_NEAR(p_alpha_given_j_nonpovm_check(density_from_bloch(BlochVector(0, 0, 0.5)), povm),
                0.64 - 0.16 / 0.34, kTight);
    EXPECT_GT(p_alpha_given_j_nonpovm_check(density_from_bloch(BlochVector(0, 0, 1)), povm), 0.05);
}

TEST(space1, setting_probability_is_state_independent) {
    random::Source src(34);
    const Space1Povm povm = povm_space1(src.nonpolarizing_arm());
    for (int i = 0; i < 100; ++i) {
        const QubitOperator rho = src.qubit_density();
        for (int alpha : {+1, -1}) {
            EXPECT_NEAR(expectation(rho, QubitOperator(povm.element(+1, alpha) + povm.element(-1, alpha))),
                        povm.prob_alpha(alpha), kTight);
        }
    }
}

TEST(space1, bell_product_state_boundary) {
    const Space1Povm z = povm_space1(arm(1 / std::sqrt(2.0), {0, 0}, {0, 0}));
    const auto t = joint_table(states::product(BlochVector(0, 0, 1), BlochVector(0, 0, 1)), z, z);
    EXPECT_NEAR(bell_quantity(BellKind::standard, t, {1, 1, 1, 1}), 0.0, kTight);
}

TEST(space1, bell_singlet_planar_optimum) {
    const Space1Povm a = povm_space1(arm(1 / std::sqrt(2.0), planar(0), planar(90)));
    const Space1Povm b = povm_space1(arm(1 / std::sqrt(2.0), planar(45), planar(135)));
    const auto t = joint_table(states::singlet(), a, b);
    EXPECT_NEAR(bell_quantity(BellKind::standard, t, {1, 1, 1, 1}), -(1 + std::sqrt(2.0)) / 2, 1e-12);
    EXPECT_FALSE(within_classical_window(bell_quantity(BellKind::standard, t, {1, 1, 1, 1})));
}

TEST(space1, bell_maximally_mixed_is_minus_half) {
    random::Source src(35);
    const TwoQubitState mixed = TwoQubitState::Identity() / 4.0;
    for (int i = 0; i < 20; ++i) {
        const auto t = joint_table(mixed, povm_space1(src.nonpolarizing_arm()), povm_space1(src.nonpolarizing_arm()));
        const BellChoice c{src.sign(), src.sign(), src.sign(), src.sign()};
        EXPECT_NEAR(bell_quantity(BellKind::standard, t, c), -0.5, kTight);
    }
}

TEST(space1, bell_table_path_matches_projective_path) {
    random::Source src(36);
    for (int i = 0; i < 300; ++i) {
        const Space1Povm a = povm_space1(src.nonpolarizing_arm());
        const Space1Povm b = povm_space1(src.nonpolarizing_arm());
        const TwoQubitState rho = src.two_qubit_density();
        const BellChoice c{src.sign(), src.sign(), src.sign(), src.sign()};
        EXPECT_NEAR(bell_quantity(BellKind::standard, joint_table(rho, a, b), c), standard_from_projectors(rho, a, b, c),
                    kTight);
    }
}

TEST(space1, separable_states_stay_in_window) {
    random::Source src(37);
    for (int i = 0; i < 300; ++i) {
        const auto t = joint_table(src.separable(), povm_space1(src.nonpolarizing_arm()),
                                   povm_space1(src.nonpolarizing_arm()));
        const BellChoice c{src.sign(), src.sign(), src.sign(), src.sign()};
        EXPECT_TRUE(within_classical_window(bell_quantity(BellKind::standard, t, c)));
        EXPECT_TRUE(within_classical_window(bell_quantity(BellKind::mixed, t, c)));
    }
}

TEST(space1, dual_and_mixed_on_uniform_table) {
    // Uniform: every conditional in C' and C'' is 1/4 or 1/2.
    const stats::ProbTable u({"j", "k", "alpha", "beta"}, std::vector<double>(16, 1.0 / 16));
    EXPECT_NEAR(bell_quantity(BellKind::dual, u, {1, -1, 1, -1}), -0.5, kTight);
    EXPECT_NEAR(bell_quantity(BellKind::mixed, u, {-1, 1, 1, -1}), -0.5, kTight);
}

TEST(space1, bell_axis_order_does_not_matter) {
    random::Source src(38);
    const auto t = joint_table(src.two_qubit_density(), povm_space1(src.nonpolarizing_arm()),
                               povm_space1(src.nonpolarizing_arm()));
    const auto shuffled = stats::marginalize(t, {"beta", "j", "alpha", "k"});
    for (BellKind kind : {BellKind::standard, BellKind::dual, BellKind::mixed}) {
        EXPECT_NEAR(bell_quantity(kind, t, {1, -1, -1, 1}), bell_quantity(kind, shuffled, {1, -1, -1, 1}), kTight);
    }
}

TEST(space1, bell_zero_probability_setting) {
    // r = 1 never selects alpha = -1.
    const Space1Povm a = povm_space1(arm(1.0, {0, 0}, {0, 0}));
    const Space1Povm b = povm_space1(arm(1 / std::sqrt(2.0), {0, 0}, {0, 0}));
    const auto t = joint_table(states::singlet(), a, b);
    EXPECT_THROW(bell_quantity(BellKind::standard, t, {1, 1, 1, 1}), ConditionalUndefined);
}

TEST(space1, consistency_check_flags_signalling_tables) {
    std::vector<double> e(16, 1.0 / 16);
    // Shift weight between j outcomes only when beta = +1 (index bits j k alpha beta).
    e[0b0000] += 0.05;
    e[0b1000] -= 0.05;
    const stats::ProbTable t({"j", "k", "alpha", "beta"}, e);
    EXPECT_THROW(bell_quantity(BellKind::standard, t, {1, 1, -1, 1}), std::runtime_error);
    EXPECT_NO_THROW(bell_quantity(BellKind::standard, t, {1, 1, -1, 1}, {.consistency_tolerance = -1}));
}

TEST(space1, parse_bell_kind) {
    EXPECT_EQ(parse_bell_kind("dual"), BellKind::dual);
    EXPECT_EQ(to_string(BellKind::mixed), "mixed");
    EXPECT_THROW(parse_bell_kind("chsh"), std::invalid_argument);
}
