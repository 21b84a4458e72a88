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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "bellspace/format.hpp"

namespace bellspace::scan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize(ParameterKind kind, double value) {
    if (kind == ParameterKind::angle) {
        double wrapped = std::fmod(value, kTwoPi);
        if (wrapped < 0) wrapped += kTwoPi;
        if (wrapped >= kTwoPi) wrapped = 0.0;
        return wrapped;
    }
    return std::clamp(value, 0.0, 1.0);
}

// Strictly better objective, or equal objective at a lexicographically smaller point.
bool better(double f, const std::vector<double> &x, double best_f, const std::vector<double> &best_x) {
    if (f != best_f) return f > best_f;
    return std::lexicographical_compare(x.begin(), x.end(), best_x.begin(), best_x.end());
}

}  // namespace

std::string to_string(Objective objective) {
    switch (objective) {
        case Objective::standard:
            return "standard";
        case Objective::dual:
            return "dual";
        case Objective::mixed:
            return "mixed";
        case Objective::quasi_negativity:
            return "quasi_negativity";
    }
    return "?";
}

Objective parse_objective(const std::string &text) {
    if (text == "standard") return Objective::standard;
    if (text == "dual") return Objective::dual;
    if (text == "mixed") return Objective::mixed;
    if (text == "quasi_negativity") return Objective::quasi_negativity;
    throw std::invalid_argument("unknown objective '" + text +
                                "' (expected standard, dual, mixed or quasi_negativity)");
}

namespace {

space1::BellKind bell_kind(Objective objective) {
    switch (objective) {
        case Objective::standard:
            return space1::BellKind::standard;
        case Objective::dual:
            return space1::BellKind::dual;
        case Objective::mixed:
            return space1::BellKind::mixed;
        case Objective::quasi_negativity:
            break;
    }
    throw std::invalid_argument("quasi_negativity is not a Bell quantity");
}

double window_excess(double c) { return std::max({c, -1.0 - c, 0.0}); }

}  // namespace

double violation_objective(Objective objective, const stats::ProbTable &table, const space1::BellChoice &choice) {
    if (objective == Objective::quasi_negativity) return std::max(0.0, -table.min_entry());
    return window_excess(space1::bell_quantity(bell_kind(objective), table, choice));
}

Evaluation evaluate(const Experiment &experiment, Objective objective) {
    Evaluation out;
    if (objective == Objective::quasi_negativity) {
        if (experiment.space != 2) throw PreconditionError("quasi_negativity objective needs probability space 2");
        const stats::ProbTable quasi =
            space2::quasi_joint(experiment.state.build(), space2::povm_space2(experiment.arm_a),
                                space2::povm_space2(experiment.arm_b));
        out.value = quasi.min_entry();
        out.objective = std::max(0.0, -out.value);
        return out;
    }
    if (experiment.space != 1) throw PreconditionError("Bell objectives need probability space 1");
    out.value = space1::bell_quantity(bell_kind(objective), joint_table(experiment), experiment.choice);
    out.objective = window_excess(out.value);
    return out;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char *env = std::getenv("BELLSPACE_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ScanResult grid_scan(const Experiment &base, const ScanSpec &spec, const ScanOptions &options) {
    if (spec.axes.empty()) throw PreconditionError("grid_scan: no parameters to scan");
    ScanResult result;
    std::size_t total = 1;
    for (const auto &axis : spec.axes) {
        parameter_kind(axis.name);
        if (axis.count < 1) throw PreconditionError("grid_scan: grid count for " + axis.name + " must be >= 1");
        if (std::find(result.names.begin(), result.names.end(), axis.name) != result.names.end()) {
            throw PreconditionError("grid_scan: parameter " + axis.name + " listed twice");
        }
        result.names.push_back(axis.name);
        total *= static_cast<std::size_t>(axis.count);
    }

    auto params_of = [&](std::size_t flat) {
        std::vector<double> params(spec.axes.size());
        for (std::size_t i = spec.axes.size(); i-- > 0;) {
            const auto &axis = spec.axes[i];
            params[i] = axis.at(static_cast<int>(flat % static_cast<std::size_t>(axis.count)));
            flat /= static_cast<std::size_t>(axis.count);
        }
        return params;
    };

    std::vector<GridPoint> points(total);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t flat = first; flat < total; flat += stride) {
            GridPoint &pt = points[flat];
            pt.params = params_of(flat);
            try {
                const Evaluation ev = evaluate(with_parameters(base, result.names, pt.params), spec.objective);
                pt.objective = ev.objective;
                pt.value = ev.value;
            } catch (const std::exception &) {
                pt.ok = false;
                pt.objective = pt.value = std::numeric_limits<double>::quiet_NaN();
            }
        }
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), total));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto &th : pool) th.join();
    }

    bool found = false;
    for (const GridPoint &pt : points) {
        if (!pt.ok) {
            ++result.skipped;
            continue;
        }
        if (!found || better(pt.objective, pt.params, result.best_objective, result.best_params)) {
            found = true;
            result.best_objective = pt.objective;
            result.best_value = pt.value;
            result.best_params = pt.params;
        }
    }
    if (!found) throw PreconditionError("grid_scan: every grid point failed to evaluate");
    result.evaluations = total;
    if (spec.keep_grid) result.grid = std::move(points);
    return result;
}

ScanResult refine(const std::vector<ParameterKind> &kinds, std::vector<double> start, const ObjectiveFn &objective,
                  const RefineOptions &options) {
    if (kinds.size() != start.size()) throw std::invalid_argument("refine: kinds/start size mismatch");
    ScanResult result;
    for (std::size_t i = 0; i < start.size(); ++i) start[i] = normalize(kinds[i], start[i]);

    auto eval = [&](const std::vector<double> &x, bool &ok) {
        ++result.evaluations;
        try {
            ok = true;
            return objective(x);
        } catch (const std::exception &) {
            ok = false;
            ++result.skipped;
            return -std::numeric_limits<double>::infinity();
        }
    };

    bool ok = false;
    std::vector<double> x = start;
    double f = eval(x, ok);
    if (!ok) throw PreconditionError("refine: objective cannot be evaluated at the start point");
    double step = options.initial_step;
    result.trace.push_back({x, f, step, result.evaluations});

    while (step >= options.min_step && result.evaluations < options.max_evaluations) {
        bool improved = false;
        for (std::size_t i = 0; i < x.size() && result.evaluations < options.max_evaluations; ++i) {
            for (double sign : {+1.0, -1.0}) {
                std::vector<double> y = x;
                y[i] = normalize(kinds[i], x[i] + sign * step);
                if (y[i] == x[i]) continue;
                const double fy = eval(y, ok);
                if (ok && fy > f + options.min_improvement) {
                    x = std::move(y);
                    f = fy;
                    improved = true;
                    break;
                }
                if (result.evaluations >= options.max_evaluations) break;
            }
        }
        if (!improved) step *= 0.5;
        result.trace.push_back({x, f, step, result.evaluations});
    }
    result.best_params = std::move(x);
    result.best_objective = f;
    return result;
}

ScanResult refine(const Experiment &base, const std::vector<std::string> &names, std::vector<double> start,
                  Objective objective, const RefineOptions &options) {
    std::vector<ParameterKind> kinds;
    for (const auto &name : names) kinds.push_back(parameter_kind(name));
    ScanResult result = refine(
        kinds, std::move(start),
        [&](const std::vector<double> &x) { return evaluate(with_parameters(base, names, x), objective).objective; },
        options);
    result.names = names;
    result.best_value = evaluate(with_parameters(base, names, result.best_params), objective).value;
    return result;
}

void write_landscape_csv(std::ostream &out, const ScanResult &result, Objective objective) {
    for (const auto &name : result.names) out << name << ',';
    out << "objective," << (objective == Objective::quasi_negativity ? "min_entry" : "c_value") << '\n';
    for (const GridPoint &pt : result.grid) {
        for (double p : pt.params) out << format_double(p) << ',';
        out << format_double(pt.objective) << ',' << format_double(pt.value) << '\n';
    }
}

}  // namespace bellspace::scan
