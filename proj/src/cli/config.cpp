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

// Config loading. Three failure classes are kept apart: the text is not JSON
// (parse), the JSON has the wrong shape (schema), or the values describe an
// unphysical setup (physics). Errors carry the dotted field path and, where
// it can be found, the source line.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bellspace/cli.hpp"
#include "bellspace/format.hpp"

namespace bellspace::cli {

namespace {

using nlohmann::json;

// Line of the entry named by a dotted path, found by scanning for each key in
// turn. Array subscripts are skipped; good enough to point a reader at the spot.
int locate(const std::string &text, const std::string &path) {
    std::size_t pos = 0;
    std::stringstream parts(path);
    for (std::string part; std::getline(parts, part, '.');) {
        if (const auto bracket = part.find('['); bracket != std::string::npos) part.resize(bracket);
        if (part.empty()) continue;
        const std::size_t hit = text.find('"' + part + '"', pos);
        if (hit == std::string::npos) return 0;
        pos = hit + 1;
    }
    if (pos == 0) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

class Reader {
public:
    Reader(const std::string &text, const std::string &origin) : text_(text), origin_(origin) {}

    [[noreturn]] void fail(ConfigErrorKind kind, const std::string &field, const std::string &what) const {
        const int line = locate(text_, field);
        std::string where = origin_;
        if (line > 0) where += ":" + std::to_string(line);
        const std::string subject = field.empty() ? "" : " in `" + field + "`";
        throw ConfigError(kind, field, line, where + ": " + to_string(kind) + " error" + subject + ": " + what);
    }

    const json &member(const json &obj, const std::string &path, const std::string &key) const {
        const auto it = obj.find(key);
        if (it == obj.end()) fail(ConfigErrorKind::schema, join(path, key), "missing required field");
        return *it;
    }

    const json &object(const json &value, const std::string &path, std::initializer_list<const char *> allowed) const {
        if (!value.is_object()) fail(ConfigErrorKind::schema, path, "expected an object");
        for (const auto &[key, unused] : value.items()) {
            bool known = false;
            for (const char *a : allowed) known = known || key == a;
            if (!known) fail(ConfigErrorKind::schema, join(path, key), "unknown field");
        }
        return value;
    }

    double number(const json &value, const std::string &path) const {
        if (!value.is_number()) fail(ConfigErrorKind::schema, path, "expected a number");
        const double x = value.get<double>();
        if (!std::isfinite(x)) fail(ConfigErrorKind::schema, path, "expected a finite number");
        return x;
    }

    double angle(const json &value, const std::string &path) const {
        if (value.is_number()) return number(value, path);
        if (value.is_string()) {
            try {
                return parse_angle(value.get<std::string>());
            } catch (const std::invalid_argument &e) {
                fail(ConfigErrorKind::schema, path, e.what());
            }
        }
        fail(ConfigErrorKind::schema, path, "expected radians or a \"<number>deg\" string");
    }

    int sign(const json &value, const std::string &path) const {
        if (!value.is_number_integer() || (value.get<int>() != 1 && value.get<int>() != -1)) {
            fail(ConfigErrorKind::schema, path, "expected +1 or -1");
        }
        return value.get<int>();
    }

    std::string string(const json &value, const std::string &path) const {
        if (!value.is_string()) fail(ConfigErrorKind::schema, path, "expected a string");
        return value.get<std::string>();
    }

    BlochVector vector3(const json &value, const std::string &path) const {
        if (!value.is_array() || value.size() != 3) fail(ConfigErrorKind::schema, path, "expected [x, y, z]");
        return {number(value[0], path), number(value[1], path), number(value[2], path)};
    }

    static std::string join(const std::string &path, const std::string &key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    const std::string &text_;
    std::string origin_;
};

StateSpec read_state(const Reader &rd, const json &root) {
    const json &s = rd.object(rd.member(root, "", "state"), "state", {"kind", "s_A", "s_B", "eta", "amplitudes"});
    const std::string kind = rd.string(rd.member(s, "state", "kind"), "state.kind");
    StateSpec spec;
    if (kind == "singlet") {
        spec.kind = StateSpec::Kind::singlet;
    } else if (kind == "product") {
        spec.kind = StateSpec::Kind::product;
        spec.s_a = rd.vector3(rd.member(s, "state", "s_A"), "state.s_A");
        spec.s_b = rd.vector3(rd.member(s, "state", "s_B"), "state.s_B");
        for (const auto &[name, v] : {std::pair{"state.s_A", spec.s_a}, std::pair{"state.s_B", spec.s_b}}) {
            if (v.norm() > 1 + tol::kValidity) {
                rd.fail(ConfigErrorKind::physics, name, "Bloch vector length " + format_double(v.norm()) + " exceeds 1");
            }
        }
    } else if (kind == "werner") {
        spec.kind = StateSpec::Kind::werner;
        spec.eta = rd.number(rd.member(s, "state", "eta"), "state.eta");
        if (spec.eta < 0 || spec.eta > 1) rd.fail(ConfigErrorKind::physics, "state.eta", "mixing must lie in [0, 1]");
    } else if (kind == "pure") {
        spec.kind = StateSpec::Kind::pure;
        const json &amps = rd.member(s, "state", "amplitudes");
        if (!amps.is_array() || amps.size() != 4) {
            rd.fail(ConfigErrorKind::schema, "state.amplitudes", "expected four [re, im] pairs");
        }
        for (int i = 0; i < 4; ++i) {
            const json &pair = amps[static_cast<std::size_t>(i)];
            if (!pair.is_array() || pair.size() != 2) {
                rd.fail(ConfigErrorKind::schema, "state.amplitudes", "expected four [re, im] pairs");
            }
            spec.amplitudes(i) = {rd.number(pair[0], "state.amplitudes"), rd.number(pair[1], "state.amplitudes")};
        }
        const double norm = spec.amplitudes.norm();
        if (std::abs(norm * norm - 1) > tol::kValidity) {
            rd.fail(ConfigErrorKind::physics, "state.amplitudes",
                    "squared norm " + format_double(norm * norm) + " differs from 1");
        }
    } else {
        rd.fail(ConfigErrorKind::schema, "state.kind", "expected singlet, product, werner or pure, got '" + kind + "'");
    }
    return spec;
}

optics::PolarizationSetting read_setting(const Reader &rd, const json &value, const std::string &path) {
    const json &s = rd.object(value, path, {"theta", "phi"});
    return optics::PolarizationSetting::canonical(rd.angle(rd.member(s, path, "theta"), path + ".theta"),
                                                  rd.angle(rd.member(s, path, "phi"), path + ".phi"));
}

optics::ArmConfig read_arm(const Reader &rd, const json &root, const std::string &name) {
    const json &a = rd.object(rd.member(root, "", name), name, {"bs", "omega1", "omega2"});
    const std::string bs_path = name + ".bs";
    const json &b = rd.object(rd.member(a, name, "bs"), bs_path, {"t_x", "t_y", "r_x", "r_y"});
    optics::ArmConfig arm;
    arm.bs.t_x = rd.number(rd.member(b, bs_path, "t_x"), bs_path + ".t_x");
    arm.bs.t_y = rd.number(rd.member(b, bs_path, "t_y"), bs_path + ".t_y");
    arm.bs.r_x = rd.number(rd.member(b, bs_path, "r_x"), bs_path + ".r_x");
    arm.bs.r_y = rd.number(rd.member(b, bs_path, "r_y"), bs_path + ".r_y");
    arm.omega1 = read_setting(rd, rd.member(a, name, "omega1"), name + ".omega1");
    arm.omega2 = read_setting(rd, rd.member(a, name, "omega2"), name + ".omega2");

    const optics::ArmReport report = optics::validate_arm(arm);
    if (!report.valid(tol::kValidity)) rd.fail(ConfigErrorKind::physics, bs_path, report.describe(tol::kValidity));
    return arm;
}

ScanConfig read_scan(const Reader &rd, const json &value, const StateSpec &state) {
    const json &s = rd.object(value, "scan", {"objective", "axes", "refine", "max_evaluations", "threads"});
    ScanConfig cfg;
    if (s.contains("objective")) {
        const std::string name = rd.string(s["objective"], "scan.objective");
        try {
            cfg.objective = scan::parse_objective(name);
        } catch (const std::invalid_argument &e) {
            rd.fail(ConfigErrorKind::schema, "scan.objective", e.what());
        }
    }
    const json &axes = rd.member(s, "scan", "axes");
    if (!axes.is_array() || axes.empty()) rd.fail(ConfigErrorKind::schema, "scan.axes", "expected a non-empty array");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const std::string path = "scan.axes[" + std::to_string(i) + "]";
        const json &ax = rd.object(axes[i], path, {"name", "min", "max", "count"});
        scan::GridAxis axis;
        axis.name = rd.string(rd.member(ax, path, "name"), path + ".name");
        const auto &known = parameter_names();
        if (std::find(known.begin(), known.end(), axis.name) == known.end()) {
            rd.fail(ConfigErrorKind::schema, path + ".name", "unknown scan parameter '" + axis.name + "'");
        }
        axis.min = rd.angle(rd.member(ax, path, "min"), path + ".min");
        axis.max = rd.angle(rd.member(ax, path, "max"), path + ".max");
        const json &count = rd.member(ax, path, "count");
        if (!count.is_number_integer() || count.get<long long>() < 1) {
            rd.fail(ConfigErrorKind::schema, path + ".count", "expected an integer >= 1");
        }
        axis.count = count.get<int>();
        if (parameter_kind(axis.name) == ParameterKind::unit_interval && (axis.min < 0 || axis.max > 1)) {
            rd.fail(ConfigErrorKind::physics, path, "range of " + axis.name + " must lie in [0, 1]");
        }
        if (axis.name == "state.eta" && state.kind != StateSpec::Kind::werner) {
            rd.fail(ConfigErrorKind::physics, path + ".name", "state.eta can only be scanned for a werner state");
        }
        cfg.axes.push_back(axis);
    }
    if (s.contains("refine")) {
        if (!s["refine"].is_boolean()) rd.fail(ConfigErrorKind::schema, "scan.refine", "expected true or false");
        cfg.refine = s["refine"].get<bool>();
    }
    if (s.contains("max_evaluations")) {
        const json &m = s["max_evaluations"];
        if (!m.is_number_integer() || m.get<long long>() < 1) {
            rd.fail(ConfigErrorKind::schema, "scan.max_evaluations", "expected an integer >= 1");
        }
        cfg.refine_options.max_evaluations = m.get<std::size_t>();
    }
    if (s.contains("threads")) {
        const json &t = s["threads"];
        if (!t.is_number_integer() || t.get<long long>() < 0) {
            rd.fail(ConfigErrorKind::schema, "scan.threads", "expected an integer >= 0");
        }
        cfg.threads = t.get<unsigned>();
    }
    return cfg;
}

}  // namespace

std::string to_string(ConfigErrorKind kind) {
    switch (kind) {
        case ConfigErrorKind::parse:
            return "parse";
        case ConfigErrorKind::schema:
            return "schema";
        case ConfigErrorKind::physics:
            return "physics";
    }
    return "?";
}

ConfigError::ConfigError(ConfigErrorKind kind, std::string field, int line, const std::string &message)
    : std::runtime_error(message), kind_(kind), field_(std::move(field)), line_(line) {}

double parse_angle(const std::string &text) {
    constexpr std::string_view suffix = "deg";
    if (text.size() <= suffix.size() || text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0) {
        throw std::invalid_argument("angle string '" + text + "' must look like \"<number>deg\"");
    }
    double degrees = 0;
    const char *first = text.data();
    const char *last = text.data() + text.size() - suffix.size();
    const auto [ptr, ec] = std::from_chars(first, last, degrees);
    if (ec != std::errc() || ptr != last || !std::isfinite(degrees)) {
        throw std::invalid_argument("angle string '" + text + "' must look like \"<number>deg\"");
    }
    return degrees * std::numbers::pi / 180;
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    Experiment &e = cfg.experiment;
    e.state.kind = StateSpec::Kind::singlet;
    const auto bs = optics::BeamSplitter::nonpolarizing(1 / std::numbers::sqrt2);
    const double deg = std::numbers::pi / 180;
    e.arm_a = {bs, optics::PolarizationSetting::canonical(0, 0), optics::PolarizationSetting::canonical(90 * deg, 0)};
    e.arm_b = {bs, optics::PolarizationSetting::canonical(45 * deg, 0),
               optics::PolarizationSetting::canonical(135 * deg, 0)};
    e.space = 1;
    e.choice = {1, 1, 1, 1};
    return cfg;
}

ExperimentConfig parse_config(const std::string &text, const std::string &origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
        throw ConfigError(ConfigErrorKind::parse, "", line, origin + ":" + std::to_string(line) + ": parse error: " + e.what());
    }
    const Reader rd(text, origin);
    rd.object(root, "", {"state", "armA", "armB", "space", "bell", "output", "scan"});

    ExperimentConfig cfg;
    Experiment &e = cfg.experiment;
    e.state = read_state(rd, root);
    e.arm_a = read_arm(rd, root, "armA");
    e.arm_b = read_arm(rd, root, "armB");

    const json &space = rd.member(root, "", "space");
    if (!space.is_number_integer() || (space.get<int>() != 1 && space.get<int>() != 2)) {
        rd.fail(ConfigErrorKind::schema, "space", "expected 1 or 2");
    }
    e.space = space.get<int>();

    e.choice = {1, 1, 1, 1};
    if (root.contains("bell")) {
        const json &b = rd.object(root["bell"], "bell", {"j", "k", "alpha", "beta"});
        if (b.contains("j")) e.choice.j = rd.sign(b["j"], "bell.j");
        if (b.contains("k")) e.choice.k = rd.sign(b["k"], "bell.k");
        if (b.contains("alpha")) e.choice.alpha = rd.sign(b["alpha"], "bell.alpha");
        if (b.contains("beta")) e.choice.beta = rd.sign(b["beta"], "bell.beta");
    }

    if (root.contains("output")) {
        const json &o = rd.object(root["output"], "output", {"path", "format"});
        if (o.contains("path")) cfg.output.path = rd.string(o["path"], "output.path");
        if (o.contains("format")) {
            cfg.output.format = rd.string(o["format"], "output.format");
            if (cfg.output.format != "json" && cfg.output.format != "csv") {
                rd.fail(ConfigErrorKind::schema, "output.format", "expected json or csv");
            }
        }
    }

    if (root.contains("scan")) cfg.scan = read_scan(rd, root["scan"], e.state);
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(ConfigErrorKind::parse, "", 0, path + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

}  // namespace bellspace::cli
