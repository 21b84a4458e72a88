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
#include <sstream>
#include <stdexcept>

namespace bellspace::space1 {

namespace {

// Event over (j, k, alpha, beta); 0 leaves a variable free.
struct Event {
    int j = 0, k = 0, alpha = 0, beta = 0;
};

Event operator&(Event a, const Event &b) {
    if (b.j) a.j = b.j;
    if (b.k) a.k = b.k;
    if (b.alpha) a.alpha = b.alpha;
    if (b.beta) a.beta = b.beta;
    return a;
}

std::string describe(const Event &e) {
    std::ostringstream out;
    const char *sep = "";
    out << "p(";
    auto put = [&](const char *name, int v) {
        if (!v) return;
        out << sep << name << "=" << (v > 0 ? "+1" : "-1");
        sep = ",";
    };
    put("j", e.j);
    put("k", e.k);
    put("alpha", e.alpha);
    put("beta", e.beta);
    out << ")";
    return out.str();
}

// The joint table copied into a fixed (j, k, alpha, beta) layout, bit 3 = j.
class Conditioner {
   public:
    explicit Conditioner(const stats::ProbTable &table) {
        const std::array<std::size_t, 4> pos{table.axis_index("j"), table.axis_index("k"),
                                             table.axis_index("alpha"), table.axis_index("beta")};
        const std::size_t n = table.rank();
        for (std::size_t flat = 0; flat < table.size(); ++flat) {
            std::size_t canonical = 0;
            for (std::size_t axis : pos) canonical = (canonical << 1) | ((flat >> (n - 1 - axis)) & 1);
            p_[canonical] += table.entries()[flat];
        }
    }

    double p(const Event &e) const {
        std::size_t mask = 0, pattern = 0;
        auto bit = [&](int v, std::size_t shift) {
            if (!v) return;
            mask |= std::size_t{1} << shift;
            pattern |= static_cast<std::size_t>(v < 0) << shift;
        };
        bit(e.j, 3);
        bit(e.k, 2);
        bit(e.alpha, 1);
        bit(e.beta, 0);
        double total = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
            if ((i & mask) == pattern) total += p_[i];
        }
        return total;
    }

    /// p(outcome | given)
    double operator()(const Event &outcome, const Event &given) const {
        const double denom = p(given);
        if (!(denom > 0.0)) throw ConditionalUndefined(describe(given));
        return p(outcome & given) / denom;
    }

   private:
    std::array<double, 16> p_{};
};

void require_consistent(double a, double b, double tolerance, const char *what) {
    if (tolerance >= 0.0 && std::abs(a - b) > tolerance) {
        std::ostringstream msg;
        msg << "bell_quantity: " << what << " (" << a << " vs " << b << ")";
        throw std::runtime_error(msg.str());
    }
}

double standard(const Conditioner &p, const BellChoice &c, const BellOptions &opt) {
    const int j = c.j, k = c.k, a = c.alpha, b = c.beta;
    auto pjk = [&](int alpha, int beta) { return p({.j = j, .k = k}, {.alpha = alpha, .beta = beta}); };
    const double single_j = p({.j = j}, {.alpha = -a});
    const double single_k = p({.k = k}, {.beta = b});
    if (opt.consistency_tolerance >= 0.0) {
        for (int other : {+1, -1}) {
            require_consistent(p({.j = j}, {.alpha = -a, .beta = other}), single_j, opt.consistency_tolerance,
                               "p(j|alpha) depends on beta");
            require_consistent(p({.k = k}, {.alpha = other, .beta = b}), single_k, opt.consistency_tolerance,
                               "p(k|beta) depends on alpha");
        }
    }
    return pjk(a, b) - pjk(a, -b) + pjk(-a, b) + pjk(-a, -b) - single_j - single_k;
}

double dual(const Conditioner &p, const BellChoice &c) {
    const int j = c.j, k = c.k, a = c.alpha, b = c.beta;
    auto pab = [&](int jv, int kv) { return p({.alpha = a, .beta = b}, {.j = jv, .k = kv}); };
    const double single_a = p({.alpha = a}, {.j = -j});
    const double single_b = p({.beta = b}, {.k = k});
    return pab(j, k) - pab(j, -k) + pab(-j, k) + pab(-j, -k) - single_a - single_b;
}

double mixed(const Conditioner &p, const BellChoice &c, const BellOptions &opt) {
    const int j = c.j, k = c.k, a = c.alpha, b = c.beta;
    if (opt.consistency_tolerance >= 0.0) {
        for (int av : {+1, -1}) {
            for (int kv : {+1, -1}) {
                require_consistent(p.p({.k = kv, .alpha = av}), p.p({.alpha = av}) * p.p({.k = kv}),
                                   opt.consistency_tolerance, "p(alpha,k) does not factorize");
            }
        }
    }
    auto pjb = [&](int alpha, int kv) { return p({.j = j, .beta = b}, {.k = kv, .alpha = alpha}); };
    const double single_j = p({.j = j}, {.alpha = -a});
    const double single_b = p({.beta = b}, {.k = k});
    return pjb(a, k) - pjb(a, -k) + pjb(-a, k) + pjb(-a, -k) - single_j - single_b;
}

}  // namespace

stats::LabeledPovm Space1Povm::labeled(const std::string &outcome_axis, const std::string &setting_axis) const {
    stats::LabeledPovm out;
    out.axes = {outcome_axis, setting_axis};
    int n = 0;
    for (int j : {+1, -1}) {
        for (int alpha : {+1, -1}) {
            out.elements[n++] = {{j, alpha}, element(j, alpha)};
        }
    }
    return out;
}

Space1Povm povm_space1(const optics::ArmConfig &arm) {
    const auto &bs = arm.bs;
    if (std::abs(bs.t_x - bs.t_y) > tol::kAlgebra) {
        throw PreconditionError("space-1 POVM needs a nonpolarizing beam splitter: t_x != t_y");
    }
    if (std::abs(bs.r_x - bs.r_y) > tol::kAlgebra) {
        throw PreconditionError("space-1 POVM needs a nonpolarizing beam splitter: r_x != r_y");
    }
    const optics::DetectorStates states = optics::detector_states(arm);
    Space1Povm povm;
    using optics::Detector;
    povm.elements[idx(+1)][idx(+1)] = states.projector(Detector::k1x);
    povm.elements[idx(-1)][idx(+1)] = states.projector(Detector::k1y);
    povm.elements[idx(+1)][idx(-1)] = states.projector(Detector::k2x);
    povm.elements[idx(-1)][idx(-1)] = states.projector(Detector::k2y);
    povm.p_alpha[idx(+1)] = bs.r_x * bs.r_x;
    povm.p_alpha[idx(-1)] = bs.t_x * bs.t_x;
    povm.setting[idx(+1)] = optics::poincare(arm.omega1);
    povm.setting[idx(-1)] = optics::poincare(arm.omega2);
    return povm;
}

Marginals marginals_space1(const Space1Povm &povm) {
    Marginals m;
    m.S_A = povm.prob_alpha(+1) * povm.setting_vector(+1) + povm.prob_alpha(-1) * povm.setting_vector(-1);
    double residual = 0.0;
    for (int v : {+1, -1}) {
        m.delta_alpha[idx(v)] = povm.element(+1, v) + povm.element(-1, v);
        m.delta_j[idx(v)] = povm.element(v, +1) + povm.element(v, -1);
        const QubitOperator closed_alpha = povm.prob_alpha(v) * QubitOperator::Identity();
        const QubitOperator closed_j = op_from_bloch(0.5, BlochVector(v * m.S_A / 2.0));
        residual = std::max(residual, (m.delta_alpha[idx(v)] - closed_alpha).cwiseAbs().maxCoeff());
        residual = std::max(residual, (m.delta_j[idx(v)] - closed_j).cwiseAbs().maxCoeff());
    }
    if (residual > tol::kAlgebra) {
        throw std::logic_error("marginals_space1: summed marginals deviate from closed form by " +
                               std::to_string(residual));
    }
    return m;
}

Conditionals conditional_stats(const QubitOperator &rho_a, const Space1Povm &povm) {
    Eigen::Matrix2d joint;  // (idx(j), idx(alpha))
    for (int j : {+1, -1}) {
        for (int alpha : {+1, -1}) joint(idx(j), idx(alpha)) = expectation(rho_a, povm.element(j, alpha));
    }
    const Eigen::Vector2d p_alpha = joint.colwise().sum().transpose();
    const Eigen::Vector2d p_j = joint.rowwise().sum();
    Conditionals out;
    for (int v : {+1, -1}) {
        if (!(p_alpha(idx(v)) > 0.0)) throw ConditionalUndefined(v > 0 ? "p(alpha=+1)" : "p(alpha=-1)");
        if (!(p_j(idx(v)) > tol::kAlgebra)) throw ConditionalUndefined(v > 0 ? "p(j=+1)" : "p(j=-1)");
    }
    for (int j : {+1, -1}) {
        for (int alpha : {+1, -1}) {
            out.j_given_alpha(idx(j), idx(alpha)) = joint(idx(j), idx(alpha)) / p_alpha(idx(alpha));
            out.alpha_given_j(idx(alpha), idx(j)) = joint(idx(j), idx(alpha)) / p_j(idx(j));
        }
    }
    return out;
}

std::optional<QubitOperator> gleason_state_for_alpha(const BlochVector &s_a, const Space1Povm &povm, int alpha) {
    const BlochVector S_A = marginals_space1(povm).S_A;
    const double target = s_a.dot(povm.setting_vector(alpha));
    const double norm = S_A.norm();
    if (norm <= tol::kAlgebra) {
        if (std::abs(target) <= tol::kAlgebra) return density_from_bloch(BlochVector(BlochVector::Zero()));
        return std::nullopt;
    }
    if (std::abs(target) > norm + tol::kAlgebra) return std::nullopt;
    BlochVector s_alpha = (target / (norm * norm)) * S_A;
    // Within the tolerance band the witness may poke out of the ball by ~1e-12.
    if (s_alpha.norm() > 1.0) s_alpha.normalize();
    return density_from_bloch(s_alpha);
}

double p_alpha_given_j_nonpovm_check(const QubitOperator &rho_a, const Space1Povm &povm) {
    const Conditionals c = conditional_stats(rho_a, povm);
    double worst = 0.0;
    for (int alpha : {+1, -1}) {
        for (int j : {+1, -1}) {
            worst = std::max(worst, std::abs(c.alpha_given_j(idx(alpha), idx(j)) - povm.prob_alpha(alpha)));
        }
    }
    return worst;
}

stats::ProbTable joint_table(const TwoQubitState &rho, const Space1Povm &povm_a, const Space1Povm &povm_b) {
    const stats::ProbTable raw = stats::joint_table(rho, povm_a.labeled("j", "alpha"), povm_b.labeled("k", "beta"));
    return stats::marginalize(raw, {"j", "k", "alpha", "beta"});
}

std::string to_string(BellKind kind) {
    switch (kind) {
        case BellKind::standard:
            return "standard";
        case BellKind::dual:
            return "dual";
        case BellKind::mixed:
            return "mixed";
    }
    return "?";
}

BellKind parse_bell_kind(const std::string &text) {
    if (text == "standard") return BellKind::standard;
    if (text == "dual") return BellKind::dual;
    if (text == "mixed") return BellKind::mixed;
    throw std::invalid_argument("unknown Bell quantity '" + text + "' (expected standard, dual or mixed)");
}

double bell_quantity(BellKind kind, const stats::ProbTable &table, const BellChoice &choice,
                     const BellOptions &options) {
    for (int v : {choice.j, choice.k, choice.alpha, choice.beta}) stats::value_bit(v);
    const Conditioner p(table);
    switch (kind) {
        case BellKind::standard:
            return standard(p, choice, options);
        case BellKind::dual:
            return dual(p, choice);
        case BellKind::mixed:
            return mixed(p, choice, options);
    }
    throw std::invalid_argument("bell_quantity: unknown kind");
}

bool within_classical_window(double value, double tolerance) {
    return value >= -1.0 - tolerance && value <= tolerance;
}

}  // namespace bellspace::space1
