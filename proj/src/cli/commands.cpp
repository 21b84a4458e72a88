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

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "bellspace/cli.hpp"
#include "bellspace/format.hpp"
#include "bellspace/random.hpp"
#include "bellspace/space1.hpp"
#include "bellspace/space2.hpp"
#include "bellspace/states.hpp"

namespace bellspace::cli {

namespace {

// Raised for flag combinations CLI11 cannot express; reported like a parse error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::uint64_t n = 10000;
    bool has_n = false;
    std::string out;
    std::string format;
    std::string table_path;
    bool clamp = false;
};

struct Context {
    ExperimentConfig cfg;
    Options opt;
    std::string format;  // resolved
    std::string out;     // resolved
};

using CsvWriter = std::function<void(std::ostream &)>;

std::string render(const Context &ctx, const Json &json, const CsvWriter &csv) {
    if (ctx.format == "csv") {
        std::ostringstream out;
        csv(out);
        return out.str();
    }
    return dump_json(json);
}

Json table_from(const stats::ProbTable &t) { return to_json(t); }

// (first, second) label values of each detector in the given space.
std::array<int, 2> detector_labels(int space, optics::Detector d) {
    using optics::Detector;
    switch (d) {
        case Detector::k1x:
            return {+1, +1};
        case Detector::k1y:
            return space == 1 ? std::array{-1, +1} : std::array{-1, -1};
        case Detector::k2x:
            return {+1, -1};
        case Detector::k2y:
            return space == 1 ? std::array{-1, -1} : std::array{-1, +1};
    }
    return {0, 0};
}

const QubitOperator &element_of(int space, const optics::ArmConfig &arm, optics::Detector d,
                                std::optional<space1::Space1Povm> &p1, std::optional<space2::Space2Povm> &p2) {
    const auto [a, b] = detector_labels(space, d);
    if (space == 1) {
        if (!p1) p1 = space1::povm_space1(arm);
        return p1->element(a, b);
    }
    if (!p2) p2 = space2::povm_space2(arm);
    return p2->element(a, b);
}

std::array<std::string, 2> label_names(int space, char party) {
    if (space == 1) return party == 'A' ? std::array<std::string, 2>{"j", "alpha"} : std::array<std::string, 2>{"k", "beta"};
    return {std::string("j_") + party, std::string("k_") + party};
}

Json gamma_json(const space2::Space2Povm &povm) {
    if (!povm.gamma_form) return nullptr;
    const space2::GammaForm &g = *povm.gamma_form;
    Json out = Json::object();
    out["gamma_X"] = g.gamma_x();
    out["gamma_Y"] = g.gamma_y();
    out["gamma_XY"] = g.gamma_xy();
    out["S_X"] = to_json(g.axis[0]);
    out["S_Y"] = to_json(g.axis[1]);
    out["S_XY"] = to_json(g.axis[2]);
    return out;
}

// ---- povm ----

std::string cmd_povm(const Context &ctx) {
    const Experiment &e = ctx.cfg.experiment;
    Json arms = Json::object();
    struct Row {
        char party;
        optics::Detector d;
        std::array<int, 2> labels;
        QubitOperator m;
    };
    std::vector<Row> rows;
    for (const auto &[party, arm] : {std::pair{'A', e.arm_a}, std::pair{'B', e.arm_b}}) {
        std::optional<space1::Space1Povm> p1;
        std::optional<space2::Space2Povm> p2;
        const auto names = label_names(e.space, party);
        Json elements = Json::array();
        for (optics::Detector d : optics::kDetectors) {
            const QubitOperator &m = element_of(e.space, arm, d, p1, p2);
            const auto labels = detector_labels(e.space, d);
            Json el = Json::object();
            el["detector"] = optics::to_string(d);
            el[names[0]] = labels[0];
            el[names[1]] = labels[1];
            el["matrix"] = to_json(m);
            elements.push_back(std::move(el));
            rows.push_back({party, d, labels, m});
        }
        Json report = Json::object();
        report["elements"] = std::move(elements);
        if (e.space == 1) {
            report["p_alpha"] = Json::array({p1->prob_alpha(+1), p1->prob_alpha(-1)});
            report["S_plus"] = to_json(p1->setting_vector(+1));
            report["S_minus"] = to_json(p1->setting_vector(-1));
            report["S_A"] = to_json(space1::marginals_space1(*p1).S_A);
        } else {
            report["gamma_form"] = gamma_json(*p2);
        }
        arms[std::string(1, party)] = std::move(report);
    }
    Json doc = Json::object();
    doc["command"] = "povm";
    doc["space"] = e.space;
    doc["arms"] = std::move(arms);
    return render(ctx, doc, [&](std::ostream &out) {
        const auto a = label_names(e.space, 'A');
        out << "arm,detector,label1,label2,re00,im00,re01,im01,re10,im10,re11,im11\n";
        for (const Row &r : rows) {
            out << r.party << ',' << optics::to_string(r.d) << ',' << r.labels[0] << ',' << r.labels[1];
            for (int i = 0; i < 2; ++i) {
                for (int k = 0; k < 2; ++k) {
                    out << ',' << format_double(r.m(i, k).real()) << ',' << format_double(r.m(i, k).imag());
                }
            }
            out << '\n';
        }
    });
}

// ---- probs ----

Json conditionals_json(const QubitOperator &rho, const space1::Space1Povm &povm, const std::array<std::string, 2> &n) {
    Json out = Json::object();
    try {
        const space1::Conditionals c = space1::conditional_stats(rho, povm);
        Json given_setting = Json::array(), given_outcome = Json::array();
        for (int v : {+1, -1}) {
            for (int s : {+1, -1}) {
                Json a = Json::object();
                a[n[0]] = v;
                a[n[1]] = s;
                a["probability"] = c.j_given_alpha(space1::idx(v), space1::idx(s));
                given_setting.push_back(std::move(a));
                Json b = Json::object();
                b[n[1]] = s;
                b[n[0]] = v;
                b["probability"] = c.alpha_given_j(space1::idx(s), space1::idx(v));
                given_outcome.push_back(std::move(b));
            }
        }
        out["outcome_given_setting"] = std::move(given_setting);
        out["setting_given_outcome"] = std::move(given_outcome);
    } catch (const ConditionalUndefined &u) {
        out["undefined"] = u.event();
    }
    return out;
}

Json noisy_json(const space2::Space2Povm &povm, const QubitOperator &rho) {
    if (!povm.gamma_form) return nullptr;
    const space2::NoisyMarginals m = space2::noisy_marginals(povm, rho);
    Json out = Json::object();
    for (const auto *marginal : {&m.x, &m.y}) {
        Json x = Json::object();
        x["gamma"] = marginal->gamma;
        x["axis"] = to_json(marginal->axis);
        x["probs"] = Json::array({marginal->probs(0), marginal->probs(1)});
        out[std::string(1, marginal->variable)] = std::move(x);
    }
    out["jk_mean"] = m.jk_mean;
    return out;
}

std::string cmd_probs(const Context &ctx) {
    const Experiment &e = ctx.cfg.experiment;
    const TwoQubitState rho = e.state.build();
    const stats::ProbTable joint = joint_table(e);
    const QubitOperator rho_a = partial_trace_second(rho), rho_b = partial_trace_first(rho);
    Json doc = Json::object();
    doc["command"] = "probs";
    doc["space"] = e.space;
    doc["joint"] = table_from(joint);
    Json marginals = Json::object(), extra = Json::object();
    for (char party : {'A', 'B'}) {
        const auto names = label_names(e.space, party);
        marginals[std::string(1, party)] = table_from(stats::marginalize(joint, {names[0], names[1]}));
        const optics::ArmConfig &arm = party == 'A' ? e.arm_a : e.arm_b;
        const QubitOperator &r = party == 'A' ? rho_a : rho_b;
        if (e.space == 1) {
            extra[std::string(1, party)] = conditionals_json(r, space1::povm_space1(arm), names);
        } else {
            extra[std::string(1, party)] = noisy_json(space2::povm_space2(arm), r);
        }
    }
    doc["marginals"] = std::move(marginals);
    doc[e.space == 1 ? "conditionals" : "noisy_marginals"] = std::move(extra);
    return render(ctx, doc, [&](std::ostream &out) { stats::write_csv(out, joint); });
}

// ---- bell ----

std::string cmd_bell(const Context &ctx) {
    const Experiment &e = ctx.cfg.experiment;
    if (e.space != 1) throw PreconditionError("bell needs probability space 1 (config `space`)");
    const stats::ProbTable joint = joint_table(e);
    struct Line {
        space1::BellKind kind;
        double value, objective;
        bool inside;
    };
    std::vector<Line> lines;
    for (space1::BellKind kind : {space1::BellKind::standard, space1::BellKind::dual, space1::BellKind::mixed}) {
        const double value = space1::bell_quantity(kind, joint, e.choice);
        const double objective = std::max({value, -1 - value, 0.0});
        lines.push_back({kind, value, objective, space1::within_classical_window(value)});
    }
    auto verdict = [](const Line &l) { return l.inside ? "WITHIN_BOUND" : "VIOLATION"; };
    Json doc = Json::object();
    doc["command"] = "bell";
    Json choice = Json::object();
    choice["j"] = e.choice.j;
    choice["k"] = e.choice.k;
    choice["alpha"] = e.choice.alpha;
    choice["beta"] = e.choice.beta;
    doc["choice"] = std::move(choice);
    doc["window"] = Json::array({-1.0, 0.0});
    Json results = Json::array();
    bool any = false;
    for (const Line &l : lines) {
        Json r = Json::object();
        r["kind"] = space1::to_string(l.kind);
        r["value"] = l.value;
        r["violation"] = l.objective;
        r["verdict"] = verdict(l);
        results.push_back(std::move(r));
        any = any || !l.inside;
    }
    doc["results"] = std::move(results);
    doc["verdict"] = any ? "VIOLATION" : "WITHIN_BOUND";
    return render(ctx, doc, [&](std::ostream &out) {
        out << "kind,value,violation,verdict\n";
        for (const Line &l : lines) {
            out << space1::to_string(l.kind) << ',' << format_double(l.value) << ',' << format_double(l.objective)
                << ',' << verdict(l) << '\n';
        }
    });
}

// ---- sample ----

std::string cmd_sample(const Context &ctx) {
    if (!ctx.opt.has_seed) throw UsageError("sample requires --seed");
    const stats::ProbTable table = joint_table(ctx.cfg.experiment);
    const stats::ClickCounts counts = stats::sample_counts(table, ctx.opt.n, ctx.opt.seed);
    Json doc = Json::object();
    doc["command"] = "sample";
    doc["space"] = ctx.cfg.experiment.space;
    doc["counts"] = to_json(counts);
    return render(ctx, doc, [&](std::ostream &out) { stats::write_counts_csv(out, counts); });
}

// ---- invert / tomo shared input ----

stats::ProbTable read_table_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table file '" + path + "'");
    return stats::read_csv(in);
}

// Exact table, or sampled frequencies when both --seed and --n were given.
std::pair<stats::ProbTable, std::string> observed(const Context &ctx, const stats::ProbTable &exact) {
    if (!ctx.opt.table_path.empty()) return {read_table_file(ctx.opt.table_path), "table"};
    if (ctx.opt.has_seed && ctx.opt.has_n) {
        return {stats::empirical_table(stats::sample_counts(exact, ctx.opt.n, ctx.opt.seed)), "sampled"};
    }
    return {exact, "exact"};
}

const space2::GammaForm &require_gamma(const space2::Space2Povm &povm, const std::string &arm) {
    if (!povm.gamma_form) throw PreconditionError(arm + " has no gamma form; noise inversion is undefined");
    return *povm.gamma_form;
}

std::string cmd_invert(const Context &ctx) {
    const Experiment &e = ctx.cfg.experiment;
    if (e.space != 2) throw PreconditionError("invert needs probability space 2 (config `space`)");
    const space2::Space2Povm pa = space2::povm_space2(e.arm_a), pb = space2::povm_space2(e.arm_b);
    const auto [noisy, source] = observed(ctx, joint_table(e));

    // Unsuffixed j, k refer to arm A.
    stats::ProbTable out = noisy;
    for (const std::string &axis : noisy.axes()) {
        double gamma = 0;
        if (axis == "j" || axis == "j_A") gamma = require_gamma(pa, "armA").gamma_x();
        else if (axis == "k" || axis == "k_A") gamma = require_gamma(pa, "armA").gamma_y();
        else if (axis == "j_B") gamma = require_gamma(pb, "armB").gamma_x();
        else if (axis == "k_B") gamma = require_gamma(pb, "armB").gamma_y();
        else throw PreconditionError("invert: unknown table axis '" + axis + "'");
        out = stats::apply_axis_kernel(out, axis, space2::inversion_kernel(gamma));
    }
    Json doc = Json::object();
    doc["command"] = "invert";
    doc["source"] = source;
    doc["noisy"] = table_from(noisy);
    doc["inverted"] = table_from(out);
    doc["negative"] = out.min_entry() < -tol::kValidity;
    return render(ctx, doc, [&](std::ostream &o) { stats::write_csv(o, out); });
}

std::string cmd_tomo(const Context &ctx) {
    const Experiment &e = ctx.cfg.experiment;
    if (e.space != 2) throw PreconditionError("tomo needs probability space 2 (config `space`)");
    const space2::Space2Povm povm = space2::povm_space2(e.arm_a);
    const QubitOperator rho_a = partial_trace_second(e.state.build());
    const auto [table, source] = observed(ctx, space2::probabilities(rho_a, povm));
    const space2::TomographyEstimate est =
        space2::tomography_reconstruct(table, povm, {.clamp_to_ball = ctx.opt.clamp});
    Json doc = Json::object();
    doc["command"] = "tomo";
    doc["source"] = source;
    doc["s"] = to_json(est.s);
    doc["rho"] = to_json(est.rho);
    doc["valid"] = est.report.valid();
    doc["report"] = est.report.describe();
    doc["clamped"] = est.clamped;
    if (source != "table") doc["s_true"] = to_json(bloch_vector(rho_a));
    return render(ctx, doc, [&](std::ostream &out) {
        out << "s_x,s_y,s_z,valid,clamped\n"
            << format_double(est.s.x()) << ',' << format_double(est.s.y()) << ',' << format_double(est.s.z()) << ','
            << (est.report.valid() ? "true" : "false") << ',' << (est.clamped ? "true" : "false") << '\n';
    });
}

// ---- scan ----

Json point_json(const std::vector<std::string> &names, const std::vector<double> &params) {
    Json out = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = params[i];
    return out;
}

std::string cmd_scan(const Context &ctx) {
    if (!ctx.cfg.scan) throw PreconditionError("config has no `scan` section");
    const ScanConfig &sc = *ctx.cfg.scan;
    scan::ScanSpec spec;
    spec.axes = sc.axes;
    spec.objective = sc.objective;
    spec.keep_grid = ctx.format == "csv";
    const scan::ScanResult grid = scan::grid_scan(ctx.cfg.experiment, spec, {.threads = sc.threads});

    Json doc = Json::object();
    doc["command"] = "scan";
    doc["objective"] = scan::to_string(sc.objective);
    Json g = Json::object();
    std::size_t points = 1;
    for (const auto &a : sc.axes) points *= static_cast<std::size_t>(a.count);
    g["points"] = points;
    g["skipped"] = grid.skipped;
    g["best_params"] = point_json(grid.names, grid.best_params);
    g["best_objective"] = grid.best_objective;
    g["best_value"] = grid.best_value;
    doc["grid"] = std::move(g);

    std::vector<double> best = grid.best_params;
    double best_objective = grid.best_objective, best_value = grid.best_value;
    if (sc.refine) {
        const scan::ScanResult fine =
            scan::refine(ctx.cfg.experiment, grid.names, grid.best_params, sc.objective, sc.refine_options);
        Json r = Json::object();
        r["evaluations"] = fine.evaluations;
        r["best_params"] = point_json(fine.names, fine.best_params);
        r["best_objective"] = fine.best_objective;
        r["best_value"] = fine.best_value;
        Json trace = Json::array();
        for (const auto &t : fine.trace) {
            Json step = Json::object();
            step["evaluations"] = t.evaluations;
            step["step"] = t.step;
            step["objective"] = t.objective;
            trace.push_back(std::move(step));
        }
        r["trace"] = std::move(trace);
        doc["refine"] = std::move(r);
        if (fine.best_objective > best_objective) {
            best = fine.best_params;
            best_objective = fine.best_objective;
            best_value = fine.best_value;
        }
    } else {
        doc["refine"] = nullptr;
    }
    Json b = Json::object();
    b["params"] = point_json(grid.names, best);
    b["objective"] = best_objective;
    b["value"] = best_value;
    doc["best"] = std::move(b);
    return render(ctx, doc, [&](std::ostream &out) { scan::write_landscape_csv(out, grid, sc.objective); });
}

// ---- check ----

struct CheckLine {
    std::string name;
    bool passed;
    double residual;
    std::string detail;
};

double max_abs(const QubitOperator &m) { return m.cwiseAbs().maxCoeff(); }

std::vector<CheckLine> run_checks(const Context &ctx) {
    const Experiment &e = ctx.cfg.experiment;
    std::vector<CheckLine> lines;
    auto add = [&](std::string name, double residual, double tolerance, std::string detail = "") {
        lines.push_back({std::move(name), residual <= tolerance, residual, std::move(detail)});
    };

    const TwoQubitState rho = e.state.build();
    const DensityReport state_report = validate_density(rho);
    lines.push_back({"state.density", state_report.valid(), 0.0, state_report.describe()});

    random::Source src(ctx.opt.has_seed ? ctx.opt.seed : 0);
    std::vector<optics::ArmConfig> arms{e.arm_a, e.arm_b};
    for (int i = 0; i < 100; ++i) arms.push_back(src.arm());

    double completeness = 0, oracle = 0;
    for (const auto &arm : arms) {
        const optics::DetectorStates states = optics::detector_states(arm);
        QubitOperator sum = QubitOperator::Zero();
        for (optics::Detector d : optics::kDetectors) sum += states.projector(d);
        completeness = std::max(completeness, max_abs(sum - QubitOperator::Identity()));
        for (int k = 0; k < 10; ++k) {
            const QubitKet ket = src.qubit_ket();
            const auto a = optics::fock_output_oracle(ket, arm), b = optics::click_probabilities(ket, arm);
            for (int d = 0; d < 4; ++d) oracle = std::max(oracle, std::abs(a[d] - b[d]));
        }
    }
    add("povm.completeness", completeness, tol::kAlgebra, "config arms + 100 random arms");
    add("optics.fock_oracle", oracle, tol::kAlgebra, "config arms + 100 random arms, 10 inputs each");

    const stats::ProbTable joint = joint_table(e);
    double total = 0;
    for (double p : joint.entries()) total += p;
    add("joint.normalization", std::abs(total - 1), tol::kValidity);
    add("joint.nonnegative", std::max(0.0, -joint.min_entry()), tol::kValidity);

    if (e.space == 1) {
        const space1::Space1Povm pa = space1::povm_space1(e.arm_a), pb = space1::povm_space1(e.arm_b);
        double closed = 0;
        for (const auto *p : {&pa, &pb}) {
            for (int j : {+1, -1}) {
                for (int alpha : {+1, -1}) {
                    const QubitOperator expected =
                        op_from_bloch(p->prob_alpha(alpha) / 2, BlochVector(j * p->prob_alpha(alpha) / 2 * p->setting_vector(alpha)));
                    closed = std::max(closed, max_abs(p->element(j, alpha) - expected));
                }
            }
        }
        add("space1.closed_form", closed, tol::kAlgebra);
        double independence = 0;
        for (int alpha : {+1, -1}) {
            for (int beta : {+1, -1}) {
                const double pab = joint.prob({{"alpha", alpha}, {"beta", beta}});
                independence = std::max(independence, std::abs(pab - pa.prob_alpha(alpha) * pb.prob_alpha(beta)));
            }
        }
        add("space1.setting_independence", independence, tol::kAlgebra);
    } else {
        for (const auto &[name, arm] : {std::pair{"armA", e.arm_a}, std::pair{"armB", e.arm_b}}) {
            const space2::Space2Povm p = space2::povm_space2(arm);
            if (!p.gamma_form) {
                lines.push_back({std::string("space2.gamma_form.") + name, true, 0.0, "not of gamma form"});
                continue;
            }
            const space2::GammaForm &g = *p.gamma_form;
            double fit = 0;
            for (int j : {+1, -1}) {
                for (int k : {+1, -1}) {
                    const BlochVector v = (j * g.gamma_x() * g.axis[0] + k * g.gamma_y() * g.axis[1] +
                                           j * k * g.gamma_xy() * g.axis[2]) / 4;
                    fit = std::max(fit, max_abs(p.element(j, k) - op_from_bloch(0.25, v)));
                }
            }
            add(std::string("space2.gamma_form.") + name, fit, tol::kValidity);
        }
    }
    return lines;
}

std::string cmd_check(const Context &ctx, bool &all_passed) {
    const std::vector<CheckLine> lines = run_checks(ctx);
    all_passed = std::all_of(lines.begin(), lines.end(), [](const CheckLine &l) { return l.passed; });
    Json doc = Json::object();
    doc["command"] = "check";
    Json checks = Json::array();
    for (const auto &l : lines) {
        Json c = Json::object();
        c["name"] = l.name;
        c["passed"] = l.passed;
        c["residual"] = l.residual;
        if (!l.detail.empty()) c["detail"] = l.detail;
        checks.push_back(std::move(c));
    }
    doc["checks"] = std::move(checks);
    doc["all_passed"] = all_passed;
    return render(ctx, doc, [&](std::ostream &out) {
        out << "name,passed,residual\n";
        for (const auto &l : lines) {
            out << l.name << ',' << (l.passed ? "true" : "false") << ',' << format_double(l.residual) << '\n';
        }
    });
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Two-detector-pair POVM Bell experiments: tables, Bell quantities, sampling, inversion, scans."};
    app.name("bellspace");
    app.require_subcommand(1, 1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "Experiment config (JSON); built-in singlet example if omitted");
    auto *seed = app.add_option("--seed", opt.seed, "Random seed (u64)");
    auto *n = app.add_option("--n", opt.n, "Number of Monte Carlo draws");
    app.add_option("--out", opt.out, "Output file (default: config output.path, else stdout)");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    std::map<std::string, CLI::App *> sub;
    sub["povm"] = app.add_subcommand("povm", "POVM elements with p(alpha) or gamma-form report");
    sub["probs"] = app.add_subcommand("probs", "Joint, marginal and conditional tables");
    sub["bell"] = app.add_subcommand("bell", "C, C' and C'' with classical-window verdicts");
    sub["sample"] = app.add_subcommand("sample", "Monte Carlo click counts (requires --seed)");
    sub["invert"] = app.add_subcommand("invert", "Noise inversion of a simulated or supplied table");
    sub["tomo"] = app.add_subcommand("tomo", "Linear-inversion state reconstruction for arm A");
    sub["scan"] = app.add_subcommand("scan", "Grid scan and refinement from the config `scan` section");
    sub["check"] = app.add_subcommand("check", "Fock oracle and invariant self-test");
    for (const char *name : {"invert", "tomo"}) {
        sub[name]->add_option("--table", opt.table_path, "Observed table CSV instead of the simulated one");
    }
    sub["tomo"]->add_flag("--clamp", opt.clamp, "Rescale estimates outside the Bloch ball onto its surface");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "bellspace: " << e.what() << "\n\n" << app.help();
        return 1;
    }
    opt.has_seed = seed->count() > 0;
    opt.has_n = n->count() > 0;

    std::string command;
    for (const auto &[name, app_ptr] : sub) {
        if (app_ptr->parsed()) command = name;
    }

    try {
        Context ctx;
        ctx.cfg = opt.config_path.empty() ? default_config() : load_config(opt.config_path);
        ctx.opt = opt;
        ctx.format = !opt.format.empty() ? opt.format : ctx.cfg.output.format;
        ctx.out = !opt.out.empty() ? opt.out : ctx.cfg.output.path;

        std::string content;
        bool passed = true;
        if (command == "povm") content = cmd_povm(ctx);
        else if (command == "probs") content = cmd_probs(ctx);
        else if (command == "bell") content = cmd_bell(ctx);
        else if (command == "sample") content = cmd_sample(ctx);
        else if (command == "invert") content = cmd_invert(ctx);
        else if (command == "tomo") content = cmd_tomo(ctx);
        else if (command == "scan") content = cmd_scan(ctx);
        else if (command == "check") content = cmd_check(ctx, passed);
        write_output(content, ctx.out, out);
        if (!passed) {
            err << "bellspace: check: invariant failures, see report\n";
            return 1;
        }
        return 0;
    } catch (const UsageError &e) {
        err << "bellspace: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const ConfigError &e) {
        err << "bellspace: " << e.what() << '\n';
        return 1;
    } catch (const SingularInversion &e) {
        err << "bellspace: " << command << ": " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {  // PreconditionError and malformed inputs
        err << "bellspace: " << command << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "bellspace: " << command << ": " << e.what() << '\n';
        return 2;
    }
}

int run(int argc, char **argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace bellspace::cli
