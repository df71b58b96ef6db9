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

// Table rendering for the command-line tool (Markdown, CSV, JSON).

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qsearch/critical_ratio.hpp"
#include "qsearch/optimizer.hpp"
#include "qsearch/sequence.hpp"

namespace qsearch::report {

using Json = nlohmann::ordered_json;

enum class Format { md, csv, json };

inline Format parse_format(std::string_view s) {
    if (s == "md") return Format::md;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (want md, csv or json)");
}

enum class Kind {
    text,
    integer,
    probability,  // 3 decimals
    med,          // 2 decimals
    depth,        // integer when integral, else 2 decimals
    ratio,        // 3 decimals
};

struct Column {
    std::string key;
    std::string header;
    Kind kind = Kind::text;
};

struct Table {
    std::string title;
    std::vector<Column> columns;
    std::vector<Json> rows;  // objects keyed by Column::key; null renders as NA
};

inline std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

inline std::string cell_text(const Json& v, Kind kind) {
    if (v.is_null()) return "NA";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    const double x = v.get<double>();
    switch (kind) {
        case Kind::integer: return std::to_string(static_cast<long long>(std::llround(x)));
        case Kind::probability: return fixed(x, 3);
        case Kind::med: return fixed(x, 2);
        case Kind::depth: return x == std::floor(x) && std::fabs(x) < 1e15 ? fixed(x, 0) : fixed(x, 2);
        case Kind::ratio: return fixed(x, 3);
        case Kind::text: break;
    }
    return v.dump();
}

inline std::string to_markdown(const Table& t) {
    std::string out;
    if (!t.title.empty()) out += "### " + t.title + "\n\n";
    out += "|";
    for (const Column& c : t.columns) out += " " + c.header + " |";
    out += "\n|";
    for (const Column& c : t.columns) out += c.kind == Kind::text ? " --- |" : " ---: |";
    out += "\n";
    for (const Json& row : t.rows) {
        out += "|";
        for (const Column& c : t.columns) out += " " + cell_text(row.value(c.key, Json()), c.kind) + " |";
        out += "\n";
    }
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i].key);
    out += "\n";
    for (const Json& row : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            const Column& c = t.columns[i];
            out += (i ? "," : "") + csv_field(cell_text(row.value(c.key, Json()), c.kind));
        }
        out += "\n";
    }
    return out;
}

inline Json to_json(const Table& t) {
    Json j;
    j["title"] = t.title;
    j["rows"] = t.rows;
    return j;
}

/// Several tables in one document. CSV sections are headed by `# title` lines.
inline std::string render(const std::vector<Table>& tables, Format format) {
    std::string out;
    switch (format) {
        case Format::md:
            for (std::size_t i = 0; i < tables.size(); ++i) out += (i ? "\n" : "") + to_markdown(tables[i]);
            return out;
        case Format::csv:
            if (tables.size() == 1) return to_csv(tables.front());
            for (std::size_t i = 0; i < tables.size(); ++i) {
                out += (i ? "\n# " : "# ") + tables[i].title + "\n" + to_csv(tables[i]);
            }
            return out;
        case Format::json: {
            if (tables.size() == 1) return to_json(tables.front()).dump(2) + "\n";
            Json all = Json::array();
            for (const Table& t : tables) all.push_back(to_json(t));
            return all.dump(2) + "\n";
        }
    }
    return out;
}

/// Minimal RFC 4180 reader: rows of fields, quotes honoured.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        any = true;
        if (quoted) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json sequence_json(const SequenceSpec& s) { return s.empty() ? Json() : Json(format_paper_notation(s)); }

inline Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(); }

/// Columns shared by Grover and one-stage results.
inline Table single_stage_table(std::string title, const std::vector<OptResult>& results) {
    Table t{std::move(title),
            {{"n", "n", Kind::integer},
             {"sequence", "Optimal sequence", Kind::text},
             {"probability", "Success probability", Kind::probability},
             {"depth", "Single-run depth", Kind::depth},
             {"med", "MED", Kind::med}},
            {}};
    for (const OptResult& r : results) {
        Json row;
        row["n"] = r.sequence.n();
        row["sequence"] = format_paper_notation(r.sequence);
        row["probability"] = r.probability;
        row["depth"] = r.single_run_depth;
        row["med"] = r.expected_depth;
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table two_stage_table(std::string title, const std::vector<OptResult>& results) {
    Table t{std::move(title),
            {{"n", "n", Kind::integer},
             {"stage1", "Stage 1", Kind::text},
             {"stage2", "Stage 2", Kind::text},
             {"stage1_probability", "P stage 1", Kind::probability},
             {"stage2_probability", "P stage 2", Kind::probability},
             {"stage1_depth", "Depth stage 1", Kind::depth},
             {"stage2_depth", "Depth stage 2", Kind::depth},
             {"med", "MED", Kind::med}},
            {}};
    for (const OptResult& r : results) {
        Json row;
        row["n"] = r.plan ? r.plan->n() : r.sequence.n();
        row["stage1"] = format_paper_notation(r.sequence);
        row["stage2"] = r.plan ? sequence_json(r.plan->stage2()) : Json();
        row["stage1_probability"] = r.stage1_probability;
        row["stage2_probability"] = r.stage2_probability;
        row["stage1_depth"] = r.stage1_depth.total_depth;
        row["stage2_depth"] = r.stage2_depth.total_depth;
        row["med"] = r.expected_depth;
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// One row per quantity, one column per n.
inline Table critical_table(std::string title, const std::vector<CriticalResult>& one,
                            const std::vector<CriticalResult>& two) {
    Table t{std::move(title), {{"quantity", "n", Kind::text}}, {}};
    for (const CriticalResult& r : one) t.columns.push_back({std::to_string(r.n), std::to_string(r.n), Kind::ratio});
    Json r1, r2;
    r1["quantity"] = "alpha_c1";
    r2["quantity"] = "alpha_c2";
    for (std::size_t i = 0; i < one.size(); ++i) {
        r1[std::to_string(one[i].n)] = optional_number(one[i].alpha_c);
        r2[std::to_string(one[i].n)] = i < two.size() ? optional_number(two[i].alpha_c) : Json();
    }
    t.rows = {r1, r2};
    return t;
}

/// MEDs and bar depths per n for plotting.
inline Table figure_table(std::string title, const std::vector<OptResult>& grover, const std::vector<OptResult>& one,
                          const std::vector<OptResult>& two) {
    Table t{std::move(title),
            {{"n", "n", Kind::integer},
             {"d_G", "d_G", Kind::med},
             {"d_1", "d_1", Kind::med},
             {"d_2", "d_2", Kind::med},
             {"grover_depth", "Grover depth", Kind::depth},
             {"one_stage_depth", "One-stage depth", Kind::depth},
             {"two_stage_stage1_depth", "Two-stage depth (stage 1)", Kind::depth},
             {"two_stage_stage2_depth", "Two-stage depth (stage 2)", Kind::depth}},
            {}};
    for (std::size_t i = 0; i < grover.size() && i < one.size() && i < two.size(); ++i) {
        Json row;
        row["n"] = grover[i].sequence.n();
        row["d_G"] = grover[i].expected_depth;
        row["d_1"] = one[i].expected_depth;
        row["d_2"] = two[i].expected_depth;
        row["grover_depth"] = grover[i].single_run_depth;
        row["one_stage_depth"] = one[i].single_run_depth;
        row["two_stage_stage1_depth"] = two[i].stage1_depth.total_depth;
        row["two_stage_stage2_depth"] = two[i].stage2_depth.total_depth;
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace qsearch::report
