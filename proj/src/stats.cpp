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

#include "bellspace/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bellspace/format.hpp"

namespace bellspace::stats {

namespace {

std::string describe(const Assignment &event) {
    std::string out;
    for (const auto &[name, value] : event) {
        if (!out.empty()) out += ", ";
        out += name + "=" + (value > 0 ? "+1" : "-1");
    }
    return "{" + out + "}";
}

}  // namespace

int value_bit(int value) {
    if (value == 1) return 0;
    if (value == -1) return 1;
    throw std::invalid_argument("dichotomic value must be +1 or -1, got " + std::to_string(value));
}

ProbTable::ProbTable(std::vector<std::string> axes, std::vector<double> entries, bool quasi)
    : axes_(std::move(axes)), entries_(std::move(entries)), quasi_(quasi) {
    if (axes_.size() > 30) throw std::invalid_argument("ProbTable: too many axes");
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        for (std::size_t j = i + 1; j < axes_.size(); ++j) {
            if (axes_[i] == axes_[j]) throw std::invalid_argument("ProbTable: duplicate axis '" + axes_[i] + "'");
        }
    }
    if (entries_.size() != (std::size_t{1} << axes_.size())) {
        throw std::invalid_argument("ProbTable: expected " + std::to_string(std::size_t{1} << axes_.size()) +
                                    " entries, got " + std::to_string(entries_.size()));
    }
    const double total = std::accumulate(entries_.begin(), entries_.end(), 0.0);
    if (!(std::abs(total - 1.0) <= tol::kValidity)) {
        throw std::invalid_argument("ProbTable: entries sum to " + format_double(total) + ", not 1");
    }
    if (!quasi_ && min_entry() < -tol::kValidity) {
        throw std::invalid_argument("ProbTable: negative entry " + format_double(min_entry()) +
                                    " in a probability table");
    }
}

std::size_t ProbTable::axis_index(const std::string &name) const {
    auto it = std::find(axes_.begin(), axes_.end(), name);
    if (it == axes_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - axes_.begin());
}

std::size_t ProbTable::flat_index(std::span<const int> values) const {
    if (values.size() != axes_.size()) {
        throw std::invalid_argument("ProbTable: expected " + std::to_string(axes_.size()) + " values");
    }
    std::size_t flat = 0;
    for (int v : values) flat = (flat << 1) | static_cast<std::size_t>(value_bit(v));
    return flat;
}

double ProbTable::at(std::span<const int> values) const { return entries_[flat_index(values)]; }

std::vector<int> ProbTable::values_of(std::size_t flat) const {
    std::vector<int> values(axes_.size());
    for (std::size_t i = axes_.size(); i-- > 0;) {
        values[i] = bit_value(static_cast<int>(flat & 1));
        flat >>= 1;
    }
    return values;
}

double ProbTable::prob(const Assignment &event) const {
    std::size_t mask = 0, pattern = 0;
    const std::size_t n = axes_.size();
    for (const auto &[name, value] : event) {
        const std::size_t shift = n - 1 - axis_index(name);
        const std::size_t bit = static_cast<std::size_t>(value_bit(value));
        if ((mask >> shift) & 1) {
            if (((pattern >> shift) & 1) != bit) return 0.0;  // contradictory event
            continue;
        }
        mask |= std::size_t{1} << shift;
        pattern |= bit << shift;
    }
    double total = 0.0;
    for (std::size_t flat = 0; flat < entries_.size(); ++flat) {
        if ((flat & mask) == pattern) total += entries_[flat];
    }
    return total;
}

double ProbTable::min_entry() const {
    return entries_.empty() ? 0.0 : *std::min_element(entries_.begin(), entries_.end());
}

ProbTable joint_table(const TwoQubitState &rho, const LabeledPovm &povm_a, const LabeledPovm &povm_b) {
    std::vector<std::string> axes{povm_a.axes[0], povm_a.axes[1], povm_b.axes[0], povm_b.axes[1]};
    std::vector<double> entries(16, 0.0);
    std::vector<bool> seen(16, false);
    for (const auto &ea : povm_a.elements) {
        for (const auto &eb : povm_b.elements) {
            const std::size_t flat = (static_cast<std::size_t>(value_bit(ea.labels[0])) << 3) |
                                     (static_cast<std::size_t>(value_bit(ea.labels[1])) << 2) |
                                     (static_cast<std::size_t>(value_bit(eb.labels[0])) << 1) |
                                     static_cast<std::size_t>(value_bit(eb.labels[1]));
            if (seen[flat]) throw std::invalid_argument("joint_table: POVM labels are not distinct");
            seen[flat] = true;
            entries[flat] = expectation(rho, tensor(ea.op, eb.op));
        }
    }
    return ProbTable(std::move(axes), std::move(entries));
}

ProbTable marginalize(const ProbTable &table, const std::vector<std::string> &keep) {
    if (keep.empty()) throw std::invalid_argument("marginalize: keep at least one variable");
    std::vector<std::size_t> idx;
    for (const auto &name : keep) {
        const std::size_t i = table.axis_index(name);
        if (std::find(idx.begin(), idx.end(), i) != idx.end()) {
            throw std::invalid_argument("marginalize: variable '" + name + "' listed twice");
        }
        idx.push_back(i);
    }
    const std::size_t n = table.rank(), m = keep.size();
    std::vector<double> out(std::size_t{1} << m, 0.0);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        std::size_t target = 0;
        for (std::size_t i : idx) target = (target << 1) | ((flat >> (n - 1 - i)) & 1);
        out[target] += table.entries()[flat];
    }
    return ProbTable(keep, std::move(out), table.quasi());
}

ProbTable condition(const ProbTable &table, const Assignment &given) {
    std::vector<std::string> remaining;
    for (const auto &axis : table.axes()) {
        const bool fixed = std::any_of(given.begin(), given.end(), [&](const auto &g) { return g.first == axis; });
        if (!fixed) remaining.push_back(axis);
    }
    for (const auto &g : given) table.axis_index(g.first);
    const double denom = table.prob(given);
    if (!(std::abs(denom) > 0.0)) throw ConditionalUndefined(describe(given));

    std::vector<double> out(std::size_t{1} << remaining.size(), 0.0);
    for (std::size_t target = 0; target < out.size(); ++target) {
        Assignment event = given;
        const std::size_t m = remaining.size();
        for (std::size_t i = 0; i < m; ++i) {
            event.emplace_back(remaining[i], bit_value(static_cast<int>((target >> (m - 1 - i)) & 1)));
        }
        out[target] = table.prob(event) / denom;
    }
    return ProbTable(std::move(remaining), std::move(out), table.quasi());
}

ProbTable apply_axis_kernel(const ProbTable &table, const std::string &axis, const Eigen::Matrix2d &kernel) {
    const std::size_t shift = table.rank() - 1 - table.axis_index(axis);
    const std::size_t bit = std::size_t{1} << shift;
    std::vector<double> out(table.size(), 0.0);
    const auto in = table.entries();
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        const std::size_t row = (flat >> shift) & 1;
        const std::size_t base = flat & ~bit;
        out[flat] = kernel(row, 0) * in[base] + kernel(row, 1) * in[base | bit];
    }
    return ProbTable(table.axes(), std::move(out), true);
}

double total_variation(const ProbTable &a, const ProbTable &b) {
    if (a.axes() != b.axes()) throw std::invalid_argument("total_variation: axis mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a.entries()[i] - b.entries()[i]);
    return 0.5 * sum;
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ClickCounts sample_counts(const ProbTable &table, std::uint64_t n, std::uint64_t seed) {
    if (table.quasi() || table.min_entry() < 0.0) {
        throw PreconditionError("sample_counts: cannot sample from a quasi-probability table");
    }
    ClickCounts result{table.axes(), std::vector<std::uint64_t>(table.size(), 0), n, seed};
    std::vector<double> cdf(table.size());
    std::partial_sum(table.entries().begin(), table.entries().end(), cdf.begin());
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.entries()[i] > 0.0) last_positive = i;
    }
    SplitMix64 rng(seed);
    for (std::uint64_t draw = 0; draw < n; ++draw) {
        const double u = rng.next_double();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t outcome = static_cast<std::size_t>(it - cdf.begin());
        // Rounding can leave cdf.back() slightly below 1.
        if (outcome >= cdf.size()) outcome = last_positive;
        ++result.counts[outcome];
    }
    return result;
}

ProbTable empirical_table(const ClickCounts &counts) {
    if (counts.n_total == 0) throw PreconditionError("empirical_table: no samples");
    std::vector<double> freq(counts.counts.size());
    for (std::size_t i = 0; i < freq.size(); ++i) {
        freq[i] = static_cast<double>(counts.counts[i]) / static_cast<double>(counts.n_total);
    }
    return ProbTable(counts.axes, std::move(freq));
}

void write_csv(std::ostream &out, const ProbTable &table) {
    if (table.quasi()) out << "# quasi=true\n";
    for (const auto &axis : table.axes()) out << axis << ',';
    out << "probability\n";
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        for (int v : table.values_of(flat)) out << v << ',';
        out << format_double(table.entries()[flat]) << '\n';
    }
}

ProbTable read_csv(std::istream &in) {
    std::string line;
    bool quasi = false;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("quasi=true") != std::string::npos) quasi = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
        break;
    }
    if (header.size() < 2 || header.back() != "probability") {
        throw std::invalid_argument("read_csv: header must list axes followed by 'probability'");
    }
    header.pop_back();
    const std::size_t n = header.size();
    std::vector<double> entries(std::size_t{1} << n, 0.0);
    std::vector<bool> seen(entries.size(), false);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t flat = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::getline(ss, cell, ',')) throw std::invalid_argument("read_csv: short row '" + line + "'");
            flat = (flat << 1) | static_cast<std::size_t>(value_bit(std::stoi(cell)));
        }
        if (!std::getline(ss, cell, ',')) throw std::invalid_argument("read_csv: missing probability in '" + line + "'");
        if (seen[flat]) throw std::invalid_argument("read_csv: repeated outcome row '" + line + "'");
        seen[flat] = true;
        entries[flat] = std::stod(cell);
        ++rows;
    }
    if (rows != entries.size()) throw std::invalid_argument("read_csv: table is missing rows");
    return ProbTable(std::move(header), std::move(entries), quasi);
}

void write_counts_csv(std::ostream &out, const ClickCounts &counts) {
    out << "# n_total=" << counts.n_total << "\n# seed=" << counts.seed << '\n';
    for (const auto &axis : counts.axes) out << axis << ',';
    out << "count\n";
    const std::size_t n = counts.axes.size();
    for (std::size_t flat = 0; flat < counts.counts.size(); ++flat) {
        for (std::size_t i = 0; i < n; ++i) out << bit_value(static_cast<int>((flat >> (n - 1 - i)) & 1)) << ',';
        out << counts.counts[flat] << '\n';
    }
}

}  // namespace bellspace::stats
