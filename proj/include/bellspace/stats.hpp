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

// Probability tables over tuples of dichotomic (+1/-1) variables.
//
// Storage is row-major over the axes in their listed order, first axis
// slowest, with +1 stored before -1 on every axis. That order is also the
// order of the cumulative distribution used by sample_counts, so a given
// (table, n, seed) produces the same counts on every platform.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellspace/qcore.hpp"

namespace bellspace::stats {

/// Partial assignment of values to named variables.
using Assignment = std::vector<std::pair<std::string, int>>;

/// 0 for +1, 1 for -1. Throws std::invalid_argument for anything else.
int value_bit(int value);
inline int bit_value(int bit) { return bit == 0 ? +1 : -1; }

class ProbTable {
   public:
    ProbTable() = default;

    /// Throws std::invalid_argument on duplicate axes, a size other than
    /// 2^axes, an unnormalized table, or (unless `quasi`) a negative entry.
    ProbTable(std::vector<std::string> axes, std::vector<double> entries, bool quasi = false);

    const std::vector<std::string> &axes() const { return axes_; }
    std::span<const double> entries() const { return entries_; }
    bool quasi() const { return quasi_; }
    std::size_t rank() const { return axes_.size(); }
    std::size_t size() const { return entries_.size(); }

    /// Position of `name` in axes(). Throws std::invalid_argument for unknown names.
    std::size_t axis_index(const std::string &name) const;

    /// Entry for a full tuple of values given in axis order.
    double at(std::span<const int> values) const;
    double at(std::initializer_list<int> values) const { return at(std::span<const int>(values.begin(), values.size())); }

    /// Values of every axis for a flat index.
    std::vector<int> values_of(std::size_t flat) const;
    std::size_t flat_index(std::span<const int> values) const;

    /// Total weight of the entries consistent with a partial assignment.
    double prob(const Assignment &event) const;

    double min_entry() const;

   private:
    std::vector<std::string> axes_;
    std::vector<double> entries_;
    bool quasi_ = false;
};

/// One element of a four-outcome POVM together with the values it assigns to
/// the subsystem's two variables.
struct LabeledElement {
    std::array<int, 2> labels;
    QubitOperator op;
};

struct LabeledPovm {
    std::array<std::string, 2> axes;
    std::array<LabeledElement, 4> elements;
};

/// tr[rho Delta_A (x) Delta_B] over all label tuples; axes are A's followed by B's.
ProbTable joint_table(const TwoQubitState &rho, const LabeledPovm &povm_a, const LabeledPovm &povm_b);

/// Sums out every axis not in `keep`. The result's axes follow the order of `keep`.
ProbTable marginalize(const ProbTable &table, const std::vector<std::string> &keep);

/// Conditional table over the remaining axes. Throws ConditionalUndefined when
/// the event has zero probability.
ProbTable condition(const ProbTable &table, const Assignment &given);

/// entries'(.., v, ..) = sum_w kernel(bit(v), bit(w)) entries(.., w, ..) along one axis.
/// The result is flagged quasi; kernels are expected to preserve normalization.
ProbTable apply_axis_kernel(const ProbTable &table, const std::string &axis, const Eigen::Matrix2d &kernel);

/// (1/2) sum |a - b|. Throws std::invalid_argument on axis mismatch.
double total_variation(const ProbTable &a, const ProbTable &b);

/// SplitMix64. The stream for a seed is
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// and uniform doubles in [0, 1) are (z >> 11) * 2^-53.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

   private:
    std::uint64_t state_;
};

struct ClickCounts {
    std::vector<std::string> axes;
    std::vector<std::uint64_t> counts;  // flat, same layout as ProbTable
    std::uint64_t n_total = 0;
    std::uint64_t seed = 0;
};

/// n independent draws by inverse CDF over the flattened table: a uniform u
/// selects the first outcome whose cumulative probability is strictly greater
/// than u. Rejects quasi-tables.
ClickCounts sample_counts(const ProbTable &table, std::uint64_t n, std::uint64_t seed);

/// Relative frequencies. Throws PreconditionError when n_total is zero.
ProbTable empirical_table(const ClickCounts &counts);

/// Header row of axis names plus `probability`, one row per tuple in storage
/// order. Quasi-tables get a leading `# quasi=true` line.
void write_csv(std::ostream &out, const ProbTable &table);
/// Inverse of write_csv. Lines starting with '#' other than the quasi flag are ignored.
ProbTable read_csv(std::istream &in);

void write_counts_csv(std::ostream &out, const ClickCounts &counts);

}  // namespace bellspace::stats
