// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Circuit-depth cost model.
//
// The diffusion operator on w qubits costs d(D_w) = d(Lambda_{w-1}(X)) + 2
// layers. The oracle always acts on the full n-qubit register and costs
// alpha * d(D_n), independent of which stage it appears in. Sequence depths
// are kept as exact integer affine forms `fixed + alpha * oracle_unit` so
// that crossings in alpha can be located without accumulated rounding.

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsearch/errors.hpp"
#include "qsearch/sequence.hpp"

namespace qsearch {

/// Depth of the w-qubit generalized Toffoli gate for w in [2, max_width()].
class GateDepthTable {
 public:
    static constexpr int kMinWidth = 2;

    GateDepthTable() : GateDepthTable(std::vector<int>{1, 5, 13, 29, 61, 120, 160, 200, 240}) {}

    /// `toffoli_depths[i]` is the depth at width i + 2.
    explicit GateDepthTable(std::vector<int> toffoli_depths) : depths_(std::move(toffoli_depths)) {
        if (depths_.empty()) throw std::invalid_argument("gate depth table is empty");
        for (std::size_t i = 0; i < depths_.size(); ++i) {
            if (depths_[i] < 0) {
                throw std::invalid_argument("negative Toffoli depth at width " + std::to_string(i + kMinWidth));
            }
            if (i > 0 && depths_[i] < depths_[i - 1]) {
                throw std::invalid_argument("Toffoli depth decreases at width " + std::to_string(i + kMinWidth));
            }
        }
    }

    /// Linear-depth decomposition with one ancilla; the shipped default.
    static GateDepthTable linear() { return GateDepthTable(); }

    /// Reads `w,depth` records, one per line. Widths must cover [2, w_max] exactly once.
    static GateDepthTable from_stream(std::istream& in, const std::string& source = "<stream>") {
        std::vector<std::pair<int, int>> rows;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            std::istringstream fields(line);
            int w = 0;
            int d = 0;
            char comma = 0;
            if (!(fields >> w >> comma >> d) || comma != ',' || !(fields >> std::ws).eof()) {
                throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": expected 'w,depth', got '" +
                                            line + "'");
            }
            rows.emplace_back(w, d);
        }
        if (rows.empty()) throw std::invalid_argument(source + ": no records");
        int w_max = 0;
        for (const auto& [w, d] : rows) w_max = std::max(w_max, w);
        std::vector<int> depths(static_cast<std::size_t>(std::max(0, w_max - kMinWidth + 1)), -1);
        for (const auto& [w, d] : rows) {
            if (w < kMinWidth) throw std::invalid_argument(source + ": width " + std::to_string(w) + " below 2");
            auto& slot = depths[static_cast<std::size_t>(w - kMinWidth)];
            if (slot != -1) throw std::invalid_argument(source + ": duplicate width " + std::to_string(w));
            slot = d;
        }
        for (std::size_t i = 0; i < depths.size(); ++i) {
            if (depths[i] == -1) {
                throw std::invalid_argument(source + ": missing width " + std::to_string(i + kMinWidth));
            }
        }
        return GateDepthTable(std::move(depths));
    }

    static GateDepthTable from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open Toffoli depth table '" + path + "'");
        return from_stream(in, path);
    }

    /// Extends the table to `w_max` by continuing the slope of the last two entries.
    GateDepthTable with_linear_tail(int w_max) const {
        std::vector<int> depths = depths_;
        const int step = depths.size() >= 2 ? depths.back() - depths[depths.size() - 2] : 0;
        while (static_cast<int>(depths.size()) + kMinWidth - 1 < w_max) depths.push_back(depths.back() + step);
        return GateDepthTable(std::move(depths));
    }

    int min_width() const { return kMinWidth; }
    int max_width() const { return static_cast<int>(depths_.size()) + kMinWidth - 1; }
    bool covers(int w) const { return w >= kMinWidth && w <= max_width(); }

    int toffoli_depth(int w) const {
        if (!covers(w)) {
            throw std::out_of_range("width " + std::to_string(w) + " outside Toffoli depth table range [2, " +
                                    std::to_string(max_width()) + "]");
        }
        return depths_[static_cast<std::size_t>(w - kMinWidth)];
    }

    std::string to_csv() const {
        std::string out;
        for (int w = kMinWidth; w <= max_width(); ++w) {
            out += std::to_string(w) + "," + std::to_string(toffoli_depth(w)) + "\n";
        }
        return out;
    }

    friend bool operator==(const GateDepthTable&, const GateDepthTable&) = default;

 private:
    std::vector<int> depths_;
};

/// d(D_w) = d(Lambda_{w-1}(X)) + 2.
inline int diffusion_depth(const GateDepthTable& table, int w) { return table.toffoli_depth(w) + 2; }

struct DepthParams {
    double alpha = 1.0;
    GateDepthTable table;
    int n = 2;

    DepthParams() = default;
    DepthParams(double alpha_, GateDepthTable table_, int n_) : alpha(alpha_), table(std::move(table_)), n(n_) {
        validate();
    }

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
        if (!table.covers(n)) {
            throw std::out_of_range("n=" + std::to_string(n) + " outside Toffoli depth table range [2, " +
                                    std::to_string(table.max_width()) + "]");
        }
    }

    DepthParams with_alpha(double a) const { return DepthParams(a, table, n); }
};

inline double oracle_depth(const DepthParams& params) {
    params.validate();
    return params.alpha * diffusion_depth(params.table, params.n);
}

/// Depth of a sequence as `fixed + alpha * oracle_unit`, both exact integers.
struct DepthBreakdown {
    int oracle_calls = 0;
    int global_diffusions = 0;
    int local_diffusions = 0;
    int local_width = 0;  // 0 when there is no local operator
    std::int64_t fixed_depth = 0;
    std::int64_t oracle_unit = 0;
    double total_depth = 0.0;

    double at(double alpha) const { return static_cast<double>(fixed_depth) + alpha * static_cast<double>(oracle_unit); }

    DepthBreakdown operator+(const DepthBreakdown& o) const {
        DepthBreakdown r;
        r.oracle_calls = oracle_calls + o.oracle_calls;
        r.global_diffusions = global_diffusions + o.global_diffusions;
        r.local_diffusions = local_diffusions + o.local_diffusions;
        r.local_width = local_width ? local_width : o.local_width;
        r.fixed_depth = fixed_depth + o.fixed_depth;
        r.oracle_unit = oracle_unit + o.oracle_unit;
        r.total_depth = total_depth + o.total_depth;
        return r;
    }
};

/// Depth of `seq` when its oracle acts on `params.n` qubits. The sequence's
/// own register may be narrower (a second-stage sequence over m2 qubits).
inline DepthBreakdown sequence_depth(const SequenceSpec& seq, const DepthParams& params) {
    params.validate();
    if (seq.n() > params.n) {
        throw SequenceError("sequence over " + std::to_string(seq.n()) + " qubits exceeds n=" + std::to_string(params.n));
    }
    if (seq.m() && *seq.m() >= params.n) {
        throw SequenceError("local width " + std::to_string(*seq.m()) + " must be below n=" + std::to_string(params.n));
    }
    const OperatorCounts c = seq.counts();
    DepthBreakdown d;
    d.oracle_calls = c.oracle_calls;
    d.global_diffusions = c.globals;
    d.local_diffusions = c.locals;
    d.local_width = seq.m().value_or(0);
    const std::int64_t global_cost = c.globals > 0 ? diffusion_depth(params.table, seq.n()) : 0;
    const std::int64_t local_cost = c.locals > 0 ? diffusion_depth(params.table, *seq.m()) : 0;
    d.fixed_depth = c.globals * global_cost + c.locals * local_cost;
    d.oracle_unit = static_cast<std::int64_t>(c.oracle_calls) * diffusion_depth(params.table, params.n);
    d.total_depth = d.at(params.alpha);
    return d;
}

inline double expected_depth(double depth, double success_probability) {
    if (!(success_probability > 0.0) || success_probability > 1.0 + 1e-12) {
        throw std::domain_error("success probability " + std::to_string(success_probability) +
                                " outside (0, 1]; expected depth undefined");
    }
    if (depth < 0.0) throw std::domain_error("negative depth");
    return depth / success_probability;
}

}  // namespace qsearch
