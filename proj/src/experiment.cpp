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

#include "bellspace/experiment.hpp"

#include <algorithm>
#include <map>

#include "bellspace/states.hpp"

namespace bellspace {

namespace {

optics::ArmConfig &arm_of(Experiment &e, bool arm_b) { return arm_b ? e.arm_b : e.arm_a; }
const optics::ArmConfig &arm_of(const Experiment &e, bool arm_b) { return arm_b ? e.arm_b : e.arm_a; }

void set_reflection(optics::ArmConfig &arm, int space, double r) {
    r = std::clamp(r, 0.0, 1.0);
    const double t = std::sqrt(std::max(0.0, 1.0 - r * r));
    arm.bs = space == 1 ? optics::BeamSplitter{t, t, r, r} : optics::BeamSplitter{t, r, r, t};
}

}  // namespace

TwoQubitState StateSpec::build() const {
    switch (kind) {
        case Kind::singlet:
            return states::singlet();
        case Kind::product:
            return states::product(s_a, s_b);
        case Kind::werner:
            return states::werner(eta);
        case Kind::pure:
            return states::pure(amplitudes);
    }
    throw std::logic_error("StateSpec: unknown kind");
}

std::string to_string(StateSpec::Kind kind) {
    switch (kind) {
        case StateSpec::Kind::singlet:
            return "singlet";
        case StateSpec::Kind::product:
            return "product";
        case StateSpec::Kind::werner:
            return "werner";
        case StateSpec::Kind::pure:
            return "pure";
    }
    return "?";
}

stats::ProbTable joint_table(const Experiment &experiment) {
    const TwoQubitState rho = experiment.state.build();
    if (experiment.space == 1) {
        return space1::joint_table(rho, space1::povm_space1(experiment.arm_a), space1::povm_space1(experiment.arm_b));
    }
    if (experiment.space == 2) {
        return stats::joint_table(rho, space2::povm_space2(experiment.arm_a).labeled("j_A", "k_A"),
                                  space2::povm_space2(experiment.arm_b).labeled("j_B", "k_B"));
    }
    throw PreconditionError("experiment space must be 1 or 2");
}

const std::vector<std::string> &parameter_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const char *arm : {"armA", "armB"}) {
            for (const char *omega : {"omega1", "omega2"}) {
                for (const char *angle : {"theta", "phi"}) {
                    out.push_back(std::string(arm) + "." + omega + "." + angle);
                }
            }
            out.push_back(std::string(arm) + ".r");
        }
        out.push_back("state.eta");
        return out;
    }();
    return names;
}

ParameterKind parameter_kind(const std::string &name) {
    const auto &names = parameter_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument("unknown scan parameter '" + name + "'");
    }
    if (name.ends_with(".theta") || name.ends_with(".phi")) return ParameterKind::angle;
    return ParameterKind::unit_interval;
}

Experiment with_parameters(const Experiment &base, std::span<const std::string> names,
                           std::span<const double> values) {
    if (names.size() != values.size()) throw std::invalid_argument("with_parameters: size mismatch");
    Experiment out = base;
    // Raw (theta, phi) per setting, canonicalized once all overrides are in.
    std::map<std::pair<bool, bool>, std::pair<double, double>> raw;
    auto setting_of = [&](bool arm_b, bool second) -> std::pair<double, double> & {
        auto key = std::make_pair(arm_b, second);
        auto it = raw.find(key);
        if (it == raw.end()) {
            const auto &omega = second ? arm_of(out, arm_b).omega2 : arm_of(out, arm_b).omega1;
            it = raw.emplace(key, std::make_pair(omega.theta, omega.phi)).first;
        }
        return it->second;
    };
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string &name = names[i];
        parameter_kind(name);
        const double v = values[i];
        if (name == "state.eta") {
            if (out.state.kind != StateSpec::Kind::werner) {
                throw PreconditionError("parameter state.eta needs a Werner state");
            }
            out.state.eta = std::clamp(v, 0.0, 1.0);
            continue;
        }
        const bool arm_b = name.starts_with("armB");
        if (name.ends_with(".r")) {
            set_reflection(arm_of(out, arm_b), out.space, v);
            continue;
        }
        const bool second = name.find("omega2") != std::string::npos;
        auto &angles = setting_of(arm_b, second);
        (name.ends_with(".theta") ? angles.first : angles.second) = v;
    }
    for (const auto &[key, angles] : raw) {
        auto &arm = arm_of(out, key.first);
        (key.second ? arm.omega2 : arm.omega1) = optics::PolarizationSetting::canonical(angles.first, angles.second);
    }
    return out;
}

double parameter_value(const Experiment &experiment, const std::string &name) {
    parameter_kind(name);
    if (name == "state.eta") return experiment.state.eta;
    const bool arm_b = name.starts_with("armB");
    const auto &arm = arm_of(experiment, arm_b);
    if (name.ends_with(".r")) return arm.bs.r_x;
    const auto &omega = name.find("omega2") != std::string::npos ? arm.omega2 : arm.omega1;
    return name.ends_with(".theta") ? omega.theta : omega.phi;
}

}  // namespace bellspace
