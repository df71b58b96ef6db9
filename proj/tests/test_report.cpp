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

#include <gtest/gtest.h>

#include "report.hpp"

namespace qsearch::report {
namespace {

Table sample() {
    Table t{"Sample",
            {{"n", "n", Kind::integer},
             {"sequence", "Sequence", Kind::text},
             {"probability", "P", Kind::probability},
             {"med", "MED", Kind::med},
             {"depth", "Depth", Kind::depth}},
            {}};
    Json row;
    row["n"] = 4;
    row["sequence"] = "S_{4,3}(1,1)";
    row["probability"] = 0.82128906;
    row["med"] = 63.3154;
    row["depth"] = 52.0;
    t.rows.push_back(row);
    Json missing;
    missing["n"] = 5;
    missing["sequence"] = Json();
    missing["probability"] = 0.5;
    missing["med"] = 1.005;
    missing["depth"] = 12.5;
    t.rows.push_back(missing);
    return t;
}

TEST(Report, ParseFormat) {
    EXPECT_EQ(parse_format("md"), Format::md);
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_EQ(parse_format("json"), Format::json);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Report, CellRounding) {
    EXPECT_EQ(cell_text(Json(0.82128906), Kind::probability), "0.821");
    EXPECT_EQ(cell_text(Json(63.3154), Kind::med), "63.32");
    EXPECT_EQ(cell_text(Json(52.0), Kind::depth), "52");
    EXPECT_EQ(cell_text(Json(12.5), Kind::depth), "12.50");
    EXPECT_EQ(cell_text(Json(7), Kind::integer), "7");
    EXPECT_EQ(cell_text(Json(), Kind::ratio), "NA");
    EXPECT_EQ(cell_text(Json(2.285156), Kind::ratio), "2.285");
}

TEST(Report, CsvHasHeaderAndLfEndings) {
    const std::string csv = to_csv(sample());
    EXPECT_EQ(csv, "n,sequence,probability,med,depth\n4,\"S_{4,3}(1,1)\",0.821,63.32,52\n5,NA,0.500,1.00,12.50\n");
    EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Report, CsvRoundTrip) {
    const Table t = sample();
    const auto rows = parse_csv(to_csv(t));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "sequence", "probability", "med", "depth"}));
    EXPECT_EQ(rows[1][1], "S_{4,3}(1,1)");
    EXPECT_EQ(rows[2][1], "NA");
    EXPECT_EQ(parse_csv("a,\"b \"\"q\"\"\"\r\n"), (std::vector<std::vector<std::string>>{{"a", "b \"q\""}}));
    EXPECT_THROW(parse_csv("\"open"), std::invalid_argument);
}

TEST(Report, JsonKeepsFullPrecision) {
    const Json j = to_json(sample());
    EXPECT_EQ(j["title"], "Sample");
    EXPECT_DOUBLE_EQ(j["rows"][0]["probability"].get<double>(), 0.82128906);
    EXPECT_TRUE(j["rows"][1]["sequence"].is_null());
    const Json parsed = Json::parse(render({sample()}, Format::json));
    EXPECT_DOUBLE_EQ(parsed["rows"][0]["med"].get<double>(), 63.3154);
}

TEST(Report, Markdown) {
    const std::string md = to_markdown(sample());
    EXPECT_NE(md.find("### Sample"), std::string::npos);
    EXPECT_NE(md.find("| n | Sequence | P | MED | Depth |"), std::string::npos);
    EXPECT_NE(md.find("| 4 | S_{4,3}(1,1) | 0.821 | 63.32 | 52 |"), std::string::npos);
}

TEST(Report, MultiTableCsvSections) {
    const std::string csv = render({sample(), sample()}, Format::csv);
    EXPECT_EQ(csv.rfind("# Sample\nn,", 0), 0u);
    EXPECT_NE(csv.find("\n\n# Sample\n"), std::string::npos);
    EXPECT_TRUE(Json::parse(render({sample(), sample()}, Format::json)).is_array());
}

TEST(Report, CriticalTableMarksAbsent) {
    CriticalResult one;
    one.n = 4;
    one.alpha_c = 2.072265625;
    CriticalResult two;
    two.n = 4;
    two.mode = CriticalMode::two_stage;
    const Table t = critical_table("Critical", {one}, {two});
    EXPECT_EQ(to_csv(t), "quantity,4\nalpha_c1,2.072\nalpha_c2,NA\n");
}

TEST(Report, SingleStageRows) {
    const DepthParams p(1.0, GateDepthTable(), 6);
    const OptResult r = evaluate_sequence(parse_paper_notation("S_{6,4}(1,1,2)"), p);
    const std::string csv = to_csv(single_stage_table("One-stage", {r}));
    EXPECT_EQ(csv, "n,sequence,probability,depth,med\n6,\"S_{6,4}(1,1,2)\",0.755,360,476.97\n");
}

}  // namespace
}  // namespace qsearch::report
