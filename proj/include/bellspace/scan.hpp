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

// Parameter sweeps and derivative-free refinement of Bell-bound violation.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bellspace/experiment.hpp"

namespace bellspace::scan {

enum class Objective { standard, dual, mixed, quasi_negativity };

std::string to_string(Objective objective);
/// "standard" | "dual" | "mixed" | "quasi_negativity"
Objective parse_objective(const std::string &text);

/// Distance outside the classical window [-1, 0] for the Bell objectives,
/// max(C, -1 - C, 0); for quasi_negativity, max(0, -min entry).
double violation_objective(Objective objective, const stats::ProbTable &table, const space1::BellChoice &choice);

struct Evaluation {
    double objective = 0.0;
    /// Bell value C, C' or C'' for the Bell objectives, minimum entry of the
    /// quasi-joint for quasi_negativity.
    double value = 0.0;
};

/// Bell objectives need space 1, quasi_negativity needs space 2.
Evaluation evaluate(const Experiment &experiment, Objective objective);

struct GridAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

struct ScanSpec {
    std::vector<GridAxis> axes;
    Objective objective = Objective::standard;
    /// Keep every grid point in the result (for landscape output).
    bool keep_grid = true;
};

struct GridPoint {
    std::vector<double> params;
    double objective = 0.0;
    double value = 0.0;
    bool ok = true;
};

struct TraceEntry {
    std::vector<double> params;
    double objective = 0.0;
    double step = 0.0;
    std::size_t evaluations = 0;
};

struct ScanResult {
    std::vector<std::string> names;
    std::vector<double> best_params;
    double best_objective = 0.0;
    double best_value = 0.0;
    std::vector<GridPoint> grid;
    std::vector<TraceEntry> trace;
    std::size_t skipped = 0;
    std::size_t evaluations = 0;
};

struct ScanOptions {
    /// Worker threads for grid evaluation; 0 reads BELLSPACE_THREADS, falling
    /// back to the hardware concurrency.
    unsigned threads = 0;
};

/// Number of workers implied by `requested` (see ScanOptions::threads).
unsigned resolve_threads(unsigned requested);

/// Exhaustive Cartesian grid, first axis slowest. Points whose evaluation
/// throws are skipped and counted. Ties on the objective go to the
/// lexicographically smallest parameter vector. Throws PreconditionError if
/// every point fails or the spec is malformed.
ScanResult grid_scan(const Experiment &base, const ScanSpec &spec, const ScanOptions &options = {});

struct RefineOptions {
    double initial_step = 0.17453292519943295;  // pi / 18
    double min_step = 1e-6;
    std::size_t max_evaluations = 10000;
    /// A trial point replaces the incumbent only if it improves by more than this.
    double min_improvement = 1e-14;
};

/// Compass search: for each coordinate try +step then -step and take the first
/// improvement; halve the step after a sweep without one. Angles wrap modulo
/// 2 pi, amplitudes and eta clamp to [0, 1]. The best value never decreases.
ScanResult refine(const Experiment &base, const std::vector<std::string> &names, std::vector<double> start,
                  Objective objective, const RefineOptions &options = {});

using ObjectiveFn = std::function<double(const std::vector<double> &)>;

/// Same search on an arbitrary objective; kinds[i] selects wrapping or
/// clamping for coordinate i. Throwing evaluations count as failures and never
/// replace the incumbent.
ScanResult refine(const std::vector<ParameterKind> &kinds, std::vector<double> start, const ObjectiveFn &objective,
                  const RefineOptions &options = {});

/// Landscape CSV: parameter columns, objective, then c_value (Bell objectives)
/// or min_entry (quasi_negativity).
void write_landscape_csv(std::ostream &out, const ScanResult &result, Objective objective);

}  // namespace bellspace::scan
