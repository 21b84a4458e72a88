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

// Probability space 1: each detector click is read as an (outcome j, setting
// alpha) pair. Output port 1 of the (nonpolarizing) beam splitter measures
// A_{+1} = S_{+1} . sigma, port 2 measures A_{-1} = S_{-1} . sigma, and the
// setting alpha is chosen at random by the splitter with p(+1) = r^2,
// p(-1) = t^2.

#include <array>
#include <optional>

#include "bellspace/optics.hpp"
#include "bellspace/stats.hpp"

namespace bellspace::space1 {

/// Index of a dichotomic value in the fixed-size arrays below: +1 -> 0, -1 -> 1.
constexpr int idx(int value) { return value > 0 ? 0 : 1; }

struct Space1Povm {
    /// elements[idx(j)][idx(alpha)]
    std::array<std::array<QubitOperator, 2>, 2> elements;
    /// p(alpha), state independent
    std::array<double, 2> p_alpha;
    /// Setting vectors S_alpha
    std::array<BlochVector, 2> setting;

    const QubitOperator &element(int j, int alpha) const { return elements[idx(j)][idx(alpha)]; }
    double prob_alpha(int alpha) const { return p_alpha[idx(alpha)]; }
    const BlochVector &setting_vector(int alpha) const { return setting[idx(alpha)]; }

    /// Axes (j, alpha) or, for subsystem B, (k, beta).
    stats::LabeledPovm labeled(const std::string &outcome_axis, const std::string &setting_axis) const;
};

/// D1x -> (+1,+1), D1y -> (-1,+1), D2x -> (+1,-1), D2y -> (-1,-1).
/// Throws PreconditionError unless t_x = t_y and r_x = r_y.
Space1Povm povm_space1(const optics::ArmConfig &arm);

struct Marginals {
    std::array<QubitOperator, 2> delta_alpha;  // p(alpha) sigma_0
    std::array<QubitOperator, 2> delta_j;      // (sigma_0 + j S_A . sigma) / 2
    BlochVector S_A;                           // r^2 S_{+1} + t^2 S_{-1}
};

/// Marginal POVMs by explicit summation. Throws std::logic_error if they
/// disagree with the closed forms beyond tol::kAlgebra.
Marginals marginals_space1(const Space1Povm &povm);

struct Conditionals {
    /// (row = idx(j), col = idx(alpha)) -> p(j | alpha)
    Eigen::Matrix2d j_given_alpha;
    /// (row = idx(alpha), col = idx(j)) -> p(alpha | j)
    Eigen::Matrix2d alpha_given_j;
};

/// p(j|alpha) and p(alpha|j) from p(j, alpha) = tr[rho_A Delta(j, alpha)].
/// Throws ConditionalUndefined if p(j) or p(alpha) vanishes.
Conditionals conditional_stats(const QubitOperator &rho_a, const Space1Povm &povm);

/// A density matrix rho_alpha with tr[rho_alpha Delta(j)] = p(j|alpha) for the
/// state with Bloch vector s_A, if one exists. It exists iff
/// |s_A . S_alpha| <= |S_A|; the returned witness is the minimal-norm one,
/// s_alpha = (s_A . S_alpha / |S_A|^2) S_A.
std::optional<QubitOperator> gleason_state_for_alpha(const BlochVector &s_a, const Space1Povm &povm, int alpha);

/// max over (alpha, j) of |p(alpha|j) - p(alpha)|. Any positive value rules out
/// a state-independent Delta(alpha|j), since tr[rho_j Delta(alpha)] = p(alpha)
/// for every rho_j.
double p_alpha_given_j_nonpovm_check(const QubitOperator &rho_a, const Space1Povm &povm);

/// Space-1 joint table for two arms; axes (j, k, alpha, beta).
stats::ProbTable joint_table(const TwoQubitState &rho, const Space1Povm &povm_a, const Space1Povm &povm_b);

enum class BellKind { standard, dual, mixed };

std::string to_string(BellKind kind);
/// "standard" | "dual" | "mixed"; throws std::invalid_argument otherwise.
BellKind parse_bell_kind(const std::string &text);

struct BellChoice {
    int j = 1;
    int k = 1;
    int alpha = 1;
    int beta = 1;
};

struct BellOptions {
    /// Allowed deviation in the consistency checks (setting-independence of the
    /// single-party conditionals for the standard test, p(alpha, k) = p(alpha) p(k)
    /// for the mixed test). Negative disables the checks, e.g. for sampled data.
    double consistency_tolerance = 1e-9;
};

/// The CH-type combinations with classical window [-1, 0]:
///   standard  C   = p(j,k|a,b) - p(j,k|a,-b) + p(j,k|-a,b) + p(j,k|-a,-b) - p(j|-a) - p(k|b)
///   dual      C'  = p(a,b|j,k) - p(a,b|j,-k) + p(a,b|-j,k) + p(a,b|-j,-k) - p(a|-j) - p(b|k)
///   mixed     C'' = p(j,b|a,k) - p(j,b|a,-k) + p(j,b|-a,k) + p(j,b|-a,-k) - p(j|-a) - p(b|k)
/// with a = alpha, b = beta. `table` must have axes named j, k, alpha, beta (any order).
/// Throws ConditionalUndefined for zero-probability conditioning events and
/// std::runtime_error when a consistency check fails.
double bell_quantity(BellKind kind, const stats::ProbTable &table, const BellChoice &choice,
                     const BellOptions &options = {});

/// True when value lies in [-1 - tolerance, tolerance].
bool within_classical_window(double value, double tolerance = 1e-9);

}  // namespace bellspace::space1
