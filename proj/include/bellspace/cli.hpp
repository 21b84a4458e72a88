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

// Command-line front end: JSON experiment configs in, JSON or CSV results out.
// Every entry point here is usable in-process so tests can drive the tool
// without spawning it.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bellspace/experiment.hpp"
#include "bellspace/scan.hpp"
#include "bellspace/stats.hpp"

namespace bellspace::cli {

enum class ConfigErrorKind { parse, schema, physics };

std::string to_string(ConfigErrorKind kind);

/// Config rejected. `field` is the dotted path of the offending entry (empty
/// for parse errors); `line` is 1-based, or 0 when it could not be located.
class ConfigError : public std::runtime_error {
public:
    ConfigError(ConfigErrorKind kind, std::string field, int line, const std::string &message);

    ConfigErrorKind kind() const { return kind_; }
    const std::string &field() const { return field_; }
    int line() const { return line_; }

private:
    ConfigErrorKind kind_;
    std::string field_;
    int line_;
};

struct ScanConfig {
    std::vector<scan::GridAxis> axes;
    scan::Objective objective = scan::Objective::standard;
    /// Polish the best grid point with coordinate search.
    bool refine = false;
    scan::RefineOptions refine_options;
    unsigned threads = 0;
};

struct OutputConfig {
    std::string path;           // empty: stdout
    std::string format = "json";
};

struct ExperimentConfig {
    Experiment experiment;
    OutputConfig output;
    std::optional<ScanConfig> scan;
};

/// Built-in config: singlet, balanced nonpolarizing arms at the planar
/// settings A:{0, 90deg}, B:{45deg, 135deg}, space 1, choice (+1,+1,+1,+1).
ExperimentConfig default_config();

/// Parse and validate JSON text. `origin` prefixes error messages.
ExperimentConfig parse_config(const std::string &text, const std::string &origin = "<config>");
ExperimentConfig load_config(const std::string &path);

/// Angle literal: a number in radians or a string "<number>deg".
double parse_angle(const std::string &text);

// Emission helpers. Numbers use 17 significant digits; documents end with a newline.

using Json = nlohmann::ordered_json;

/// Pretty-print with two-space indent; floating-point numbers use 17
/// significant digits rather than the shortest round-trip form.
std::string dump_json(const Json &value);

Json to_json(const QubitOperator &m);
Json to_json(const BlochVector &v);
Json to_json(const stats::ProbTable &table);
Json to_json(const stats::ClickCounts &counts);

/// Write `content` to `path`, or to `fallback` when path is empty or "-".
void write_output(const std::string &content, const std::string &path, std::ostream &fallback);

/// Runs one invocation. Exit codes: 0 success, 1 usage or validation error,
/// 2 runtime error (for instance conditioning on a zero-probability event).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, char **argv);

}  // namespace bellspace::cli
