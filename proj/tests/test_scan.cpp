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

#include "bellspace/scan.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "bellspace/random.hpp"

using namespace bellspace;
using namespace bellspace::scan;

namespace {

constexpr double kPi = std::numbers::pi;
const double kOptimum = (std::sqrt(2.0) - 1) / 2;

const std::vector<std::string> kThetas{"armA.omega1.theta", "armA.omega2.theta", "armB.omega1.theta",
                                       "armB.omega2.theta"};

Experiment singlet_experiment() {
    Experiment e;
    e.state.kind = StateSpec::Kind::singlet;
    const auto bs = optics::BeamSplitter::nonpolarizing(1 / std::sqrt(2.0));
    e.arm_a = {bs, {0, 0}, {0, 0}};
    e.arm_b = {bs, {0, 0}, {0, 0}};
    e.choice = {1, 1, 1, 1};
    return e;
}

ScanSpec theta_grid(int count, Objective objective = Objective::standard) {
    ScanSpec spec;
    for (const auto &name : kThetas) spec.axes.push_back({name, 0, kPi, count});
    spec.objective = objective;
    return spec;
}

}  // namespace

TEST(scan, violation_objective_examples) {
    // A table whose standard C is known: the singlet optimum.
    Experiment e = singlet_experiment();
    const std::vector<double> optimum{0, kPi / 2, kPi / 4, 3 * kPi / 4};
    e = with_parameters(e, kThetas, optimum);
    const Evaluation ev = evaluate(e, Objective::standard);
    EXPECT_NEAR(ev.value, -(1 + std::sqrt(2.0)) / 2, 1e-12);
    EXPECT_NEAR(ev.objective, kOptimum, 1e-12);
    EXPECT_NEAR(ev.objective, 0.2071, 1e-4);

    // Mixed state at arbitrary settings: inside the window.
    Experiment flat = e;
    flat.state = {.kind = StateSpec::Kind::werner, .eta = 0.0};
    EXPECT_EQ(evaluate(flat, Objective::standard).objective, 0.0);
}

TEST(scan, objective_names_round_trip) {
    for (Objective o : {Objective::standard, Objective::dual, Objective::mixed, Objective::quasi_negativity}) {
        EXPECT_EQ(parse_objective(to_string(o)), o);
    }
    EXPECT_THROW(parse_objective("chsh"), std::invalid_argument);
}

TEST(scan, objective_space_mismatch) {
    Experiment e = singlet_experiment();
    EXPECT_THROW(evaluate(e, Objective::quasi_negativity), PreconditionError);
    e.space = 2;
    EXPECT_THROW(evaluate(e, Objective::standard), PreconditionError);
}

TEST(scan, quasi_negativity_objective) {
    Experiment e = singlet_experiment();
    e.space = 2;
    e.arm_a = e.arm_b = space2::particular_case_arm(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
    const Evaluation ev = evaluate(e, Objective::quasi_negativity);
    EXPECT_NEAR(ev.value, -1.0 / 16, 1e-12);
    EXPECT_NEAR(ev.objective, 1.0 / 16, 1e-12);
}

TEST(scan, single_grid_point) {
    ScanSpec spec;
    spec.axes = {{"armA.omega2.theta", 1.0, 1.0, 1}};
    const ScanResult r = grid_scan(singlet_experiment(), spec, {.threads = 1});
    ASSERT_EQ(r.grid.size(), 1u);
    ASSERT_EQ(r.best_params.size(), 1u);
    EXPECT_EQ(r.best_params[0], 1.0);
    EXPECT_EQ(r.best_objective, r.grid[0].objective);
    EXPECT_EQ(r.evaluations, 1u);
}

TEST(scan, singlet_coarse_grid_reaches_violation) {
    const auto t0 = std::chrono::steady_clock::now();
    const ScanResult r = grid_scan(singlet_experiment(), theta_grid(37));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_GE(r.best_objective, 0.20);
    EXPECT_NEAR(r.best_objective, kOptimum, 1e-12);  // the 5 degree grid contains an optimum
    EXPECT_EQ(r.grid.size(), 37u * 37 * 37 * 37);
    EXPECT_EQ(r.skipped, 0u);
    RecordProperty("seconds", std::to_string(seconds));
}

TEST(scan, grid_tie_break_is_lexicographic) {
    // Objective is zero everywhere for the maximally mixed state.
    Experiment e = singlet_experiment();
    e.state = {.kind = StateSpec::Kind::werner, .eta = 0.0};
    const ScanResult r = grid_scan(e, theta_grid(3));
    EXPECT_EQ(r.best_params, std::vector<double>(4, 0.0));
}

TEST(scan, product_family_never_breaches) {
    random::Source src(51);
    for (int i = 0; i < 5; ++i) {
        Experiment e = singlet_experiment();
        e.state = {.kind = StateSpec::Kind::product, .s_a = src.unit_vector(), .s_b = src.unit_vector()};
        for (Objective o : {Objective::standard, Objective::dual, Objective::mixed}) {
            const ScanResult r = grid_scan(e, theta_grid(7, o));
            EXPECT_NEAR(r.best_objective, 0.0, 1e-9) << to_string(o);
        }
    }
}

TEST(scan, grid_is_deterministic_across_thread_counts) {
    Experiment e = singlet_experiment();
    e.state = {.kind = StateSpec::Kind::werner, .eta = 0.9};
    const ScanSpec spec = theta_grid(9, Objective::dual);
    const ScanResult one = grid_scan(e, spec, {.threads = 1});
    const ScanResult many = grid_scan(e, spec, {.threads = 4});
    EXPECT_EQ(one.best_params, many.best_params);
    EXPECT_EQ(one.best_objective, many.best_objective);
    ASSERT_EQ(one.grid.size(), many.grid.size());
    for (std::size_t i = 0; i < one.grid.size(); ++i) {
        EXPECT_EQ(one.grid[i].params, many.grid[i].params);
        EXPECT_EQ(one.grid[i].objective, many.grid[i].objective);
    }
    std::ostringstream a, b;
    write_landscape_csv(a, one, spec.objective);
    write_landscape_csv(b, many, spec.objective);
    EXPECT_EQ(a.str(), b.str());
}

TEST(scan, skipped_points_are_counted) {
    // A product state with a sharp setting makes some conditionals undefined.
    Experiment e = singlet_experiment();
    e.state = {.kind = StateSpec::Kind::product, .s_a = BlochVector(0, 0, 1), .s_b = BlochVector(0, 0, 1)};
    e.arm_a.bs = optics::BeamSplitter::nonpolarizing(1.0);
    ScanSpec spec;
    spec.axes = {{"armA.r", 0.0, 1.0, 3}};
    const ScanResult r = grid_scan(e, spec, {.threads = 1});
    EXPECT_EQ(r.grid.size(), 3u);
    // r = 0 and r = 1 leave one setting of arm A with zero probability.
    EXPECT_EQ(r.skipped, 2u);
    EXPECT_FALSE(r.grid[0].ok);
    EXPECT_TRUE(r.grid[1].ok);
    EXPECT_FALSE(r.grid[2].ok);
    EXPECT_EQ(r.best_params, std::vector<double>{0.5});
}

TEST(scan, refine_from_optimum_stays) {
    const std::vector<double> optimum{0, kPi / 2, kPi / 4, 3 * kPi / 4};
    const ScanResult r = refine(singlet_experiment(), kThetas, optimum, Objective::standard);
    EXPECT_EQ(r.best_params, optimum);
    EXPECT_NEAR(r.best_objective, kOptimum, 1e-12);
}

TEST(scan, refine_from_coarse_grid_recovers_optimum) {
    const Experiment e = singlet_experiment();
    // 30 degree grid: the best point is off the optimum.
    const ScanResult coarse = grid_scan(e, theta_grid(7));
    EXPECT_LT(coarse.best_objective, kOptimum - 1e-3);
    const ScanResult fine = refine(e, kThetas, coarse.best_params, Objective::standard);
    EXPECT_NEAR(fine.best_objective, kOptimum, 1e-6);
    EXPECT_NEAR(fine.best_value, -(1 + std::sqrt(2.0)) / 2, 1e-6);
    EXPECT_NEAR(fine.best_objective, 0.207107, 1e-6);
}

TEST(scan, refine_from_skewed_start) {
    const std::vector<double> start{0.3, 1.2, 0.5, 2.0};
    const ScanResult r = refine(singlet_experiment(), kThetas, start, Objective::standard);
    EXPECT_NEAR(r.best_objective, kOptimum, 1e-6);
}

TEST(scan, refine_leaves_flat_coordinate) {
    const std::vector<ParameterKind> kinds{ParameterKind::angle, ParameterKind::angle};
    const ObjectiveFn f = [](const std::vector<double> &x) { return std::cos(x[0] - 1.0); };
    const ScanResult r = refine(kinds, {0.2, 0.7}, f);
    EXPECT_EQ(r.best_params[1], 0.7);
    EXPECT_NEAR(r.best_params[0], 1.0, 1e-5);
}

TEST(scan, refine_clamps_unit_interval) {
    const std::vector<ParameterKind> kinds{ParameterKind::unit_interval};
    const ObjectiveFn f = [](const std::vector<double> &x) { return x[0]; };
    const ScanResult r = refine(kinds, {0.5}, f);
    EXPECT_EQ(r.best_params[0], 1.0);
}

TEST(scan, refine_trace_is_monotone) {
    const ScanResult r = refine(singlet_experiment(), kThetas, {0.3, 1.2, 0.5, 2.0}, Objective::standard);
    ASSERT_FALSE(r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_GE(r.trace[i].objective, r.trace[i - 1].objective);
        EXPECT_GE(r.trace[i].evaluations, r.trace[i - 1].evaluations);
    }
    EXPECT_EQ(r.trace.back().objective, r.best_objective);
    EXPECT_LE(r.evaluations, 10000u);
}

TEST(scan, refine_is_deterministic) {
    const std::vector<double> start{0.3, 1.2, 0.5, 2.0};
    const ScanResult a = refine(singlet_experiment(), kThetas, start, Objective::mixed);
    const ScanResult b = refine(singlet_experiment(), kThetas, start, Objective::mixed);
    EXPECT_EQ(a.best_params, b.best_params);
    EXPECT_EQ(a.best_objective, b.best_objective);
    EXPECT_EQ(a.trace.size(), b.trace.size());
}

TEST(scan, refined_separable_states_stay_classical) {
    random::Source src(52);
    const std::vector<std::string> names{"armA.omega1.theta", "armA.omega1.phi", "armA.omega2.theta",
                                         "armA.omega2.phi",   "armB.omega1.theta", "armB.omega1.phi",
                                         "armB.omega2.theta", "armB.omega2.phi"};
    for (int i = 0; i < 50; ++i) {
        Experiment e = singlet_experiment();
        e.state = {.kind = StateSpec::Kind::product, .s_a = src.ball_vector(), .s_b = src.ball_vector()};
        std::vector<double> start;
        for (std::size_t k = 0; k < names.size(); ++k) start.push_back(src.uniform(0, kPi));
        const Objective o = i % 2 ? Objective::standard : Objective::mixed;
        RefineOptions opts;
        opts.max_evaluations = 2000;
        const ScanResult r = refine(e, names, start, o, opts);
        EXPECT_LE(r.best_objective, 1e-6);
    }
}

TEST(scan, landscape_csv_shape) {
    ScanSpec spec;
    spec.axes = {{"armA.omega2.theta", 0, kPi, 3}, {"armB.omega1.theta", 0, kPi, 2}};
    const ScanResult r = grid_scan(singlet_experiment(), spec, {.threads = 1});
    std::ostringstream out;
    write_landscape_csv(out, r, Objective::standard);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "armA.omega2.theta,armB.omega1.theta,objective,c_value");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 6);
}
