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

#include <cmath>
#include <fstream>
#include <sstream>

#include "bellspace/cli.hpp"
#include "bellspace/format.hpp"

namespace bellspace::cli {

namespace {

std::string number_text(double x) {
    if (!std::isfinite(x)) return "null";  // JSON has no NaN or infinity
    if (x == 0) return "0";                // drop the sign of -0
    return format_double(x);
}

// Arrays without objects inside (vectors, matrices) stay on one line.
bool flat(const Json &value) {
    if (value.is_object()) return false;
    if (!value.is_array()) return true;
    for (const Json &item : value) {
        if (!flat(item)) return false;
    }
    return true;
}

void dump_value(std::ostream &out, const Json &value, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    switch (value.type()) {
        case Json::value_t::number_float:
            out << number_text(value.get<double>());
            return;
        case Json::value_t::array:
            if (flat(value)) {
                out << '[';
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) out << ',';
                    dump_value(out, value[i], indent);
                }
                out << ']';
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out << pad;
                dump_value(out, value[i], indent + 2);
                out << (i + 1 < value.size() ? ",\n" : "\n");
            }
            out << std::string(static_cast<std::size_t>(indent), ' ') << ']';
            return;
        case Json::value_t::object: {
            if (value.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            std::size_t i = 0;
            for (const auto &[key, item] : value.items()) {
                out << pad << Json(key).dump() << ": ";
                dump_value(out, item, indent + 2);
                out << (++i < value.size() ? ",\n" : "\n");
            }
            out << std::string(static_cast<std::size_t>(indent), ' ') << '}';
            return;
        }
        default:
            out << value.dump();
    }
}

}  // namespace

std::string dump_json(const Json &value) {
    std::ostringstream out;
    dump_value(out, value, 0);
    out << '\n';
    return out.str();
}

Json to_json(const QubitOperator &m) {
    Json rows = Json::array();
    for (int r = 0; r < 2; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 2; ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const BlochVector &v) { return Json::array({v.x(), v.y(), v.z()}); }

Json to_json(const stats::ProbTable &table) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
        Json row = Json::object();
        const std::vector<int> values = table.values_of(i);
        for (std::size_t a = 0; a < table.rank(); ++a) row[table.axes()[a]] = values[a];
        row["probability"] = table.entries()[i];
        rows.push_back(std::move(row));
    }
    Json out = Json::object();
    out["axes"] = table.axes();
    out["quasi"] = table.quasi();
    out["min_entry"] = table.min_entry();
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const stats::ClickCounts &counts) {
    // Reuse the table layout helpers through a dummy uniform table.
    const std::size_t n = counts.counts.size();
    const stats::ProbTable layout(counts.axes, std::vector<double>(n, 1.0 / static_cast<double>(n)));
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::object();
        const std::vector<int> values = layout.values_of(i);
        for (std::size_t a = 0; a < layout.rank(); ++a) row[counts.axes[a]] = values[a];
        row["count"] = counts.counts[i];
        rows.push_back(std::move(row));
    }
    Json out = Json::object();
    out["axes"] = counts.axes;
    out["n_total"] = counts.n_total;
    out["seed"] = counts.seed;
    out["rows"] = std::move(rows);
    return out;
}

void write_output(const std::string &content, const std::string &path, std::ostream &fallback) {
    if (path.empty() || path == "-") {
        fallback << content;
        fallback.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << content;
    file.close();
    if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace bellspace::cli
