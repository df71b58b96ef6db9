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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "qsearch/golden.hpp"
#include "qsearch/sequence.hpp"

namespace qsearch {
namespace {

using K = OperatorKind;

TEST(SequenceSpec, GroverHasNoLocalWidth) {
    const SequenceSpec g = SequenceSpec::grover(5, 2);
    EXPECT_TRUE(g.is_pure_grover());
    EXPECT_FALSE(g.m().has_value());
    EXPECT_EQ(g.counts(), (OperatorCounts{2, 2, 0}));
    EXPECT_TRUE(SequenceSpec::grover(5, 0).empty());
}

TEST(SequenceSpec, NormalizesBlocks) {
    const SequenceSpec s(6, 4, {{K::local, 0}, {K::global, 1}, {K::global, 2}, {K::local, 1}, {K::local, 0}});
    ASSERT_EQ(s.blocks().size(), 2u);
    EXPECT_EQ(s.blocks()[0], (Block{K::global, 3}));
    EXPECT_EQ(s.blocks()[1], (Block{K::local, 1}));
    EXPECT_EQ(s.m(), 4);

    // A local width without local operators is dropped.
    const SequenceSpec g(6, 4, {{K::global, 2}});
    EXPECT_TRUE(g.is_pure_grover());
    EXPECT_EQ(g, SequenceSpec::grover(6, 2));
}

TEST(SequenceSpec, RejectsInvalidShapes) {
    EXPECT_THROW(SequenceSpec(0, std::nullopt, {}), SequenceError);
    EXPECT_THROW(SequenceSpec(4, std::nullopt, {{K::local, 1}}), SequenceError);
    EXPECT_THROW(SequenceSpec(4, 4, {{K::local, 1}}), SequenceError);
    EXPECT_THROW(SequenceSpec(4, 1, {{K::local, 1}}), SequenceError);
    EXPECT_THROW(SequenceSpec(4, 2, {{K::global, -1}}), SequenceError);
}

TEST(SequenceSpec, ExpandListsApplicationOrder) {
    const SequenceSpec s(5, 3, {{K::local, 1}, {K::global, 2}});
    EXPECT_EQ(s.expand(), (std::vector<K>{K::local, K::global, K::global}));
}

TEST(SequenceSpec, ThenConcatenates) {
    const SequenceSpec a(5, 3, {{K::global, 1}});
    const SequenceSpec b(5, 3, {{K::global, 1}, {K::local, 2}});
    const SequenceSpec ab = a.then(b);
    EXPECT_EQ(ab.blocks(), (std::vector<Block>{{K::global, 2}, {K::local, 2}}));
    EXPECT_EQ(ab.m(), 3);
    EXPECT_THROW(a.then(SequenceSpec::grover(4, 1)), SequenceError);
    EXPECT_THROW(SequenceSpec(5, 3, {{K::local, 1}}).then(SequenceSpec(5, 2, {{K::local, 1}})), SequenceError);
}

TEST(Notation, TupleIsReadRightToLeft) {
    // S_{6,4}(1,1,2): two local operators act first, then one global, then one local.
    const SequenceSpec s = parse_paper_notation("S_{6,4}(1,1,2)");
    EXPECT_EQ(s.n(), 6);
    EXPECT_EQ(s.m(), 4);
    EXPECT_EQ(s.blocks(), (std::vector<Block>{{K::local, 2}, {K::global, 1}, {K::local, 1}}));
    EXPECT_EQ(notation_tuple(s), (std::vector<int>{1, 1, 2}));
}

TEST(Notation, LeadingGlobalGetsZeroLocalCount) {
    // S_{6,4}(1,1) applies the local operator first; a trailing zero puts the global first.
    const SequenceSpec local_first = parse_paper_notation("S_{6,4}(1,1)");
    EXPECT_EQ(local_first.blocks(), (std::vector<Block>{{K::local, 1}, {K::global, 1}}));
    const SequenceSpec s = parse_paper_notation("S_{6,4}(1,1,0)");
    EXPECT_EQ(s.blocks(), (std::vector<Block>{{K::global, 1}, {K::local, 1}}));
    EXPECT_EQ(notation_tuple(s), (std::vector<int>{1, 1, 0}));
    EXPECT_EQ(format_paper_notation(s), "S_{6,4}(1,1,0)");
}

TEST(Notation, GroverForms) {
    EXPECT_EQ(parse_paper_notation("S_4(1,0)"), SequenceSpec::grover(4, 1));
    EXPECT_EQ(parse_paper_notation("S_{10}(18,0)"), SequenceSpec::grover(10, 18));
    EXPECT_EQ(parse_paper_notation("  S_{10}( 18 , 0 ) "), SequenceSpec::grover(10, 18));
    EXPECT_EQ(format_paper_notation(SequenceSpec::grover(4, 1)), "S_4(1,0)");
    EXPECT_EQ(format_paper_notation(SequenceSpec::grover(10, 18)), "S_{10}(18,0)");
    EXPECT_EQ(format_paper_notation(SequenceSpec::grover(2, 1)), "S_2(1,0)");
}

TEST(Notation, SingleLocalBlock) {
    const SequenceSpec s = parse_paper_notation("S_{6,4}(1)");
    EXPECT_EQ(s.blocks(), (std::vector<Block>{{K::local, 1}}));
    EXPECT_EQ(format_paper_notation(s), "S_{6,4}(1)");
}

TEST(Notation, GoldenSequencesRoundTrip) {
    for (const auto& row : golden::kOneStage) {
        const SequenceSpec s = parse_paper_notation(row.sequence);
        EXPECT_EQ(format_paper_notation(s), row.sequence);
        EXPECT_EQ(s.n(), row.n);
    }
    for (const auto& row : golden::kTwoStage) {
        EXPECT_EQ(format_paper_notation(parse_paper_notation(row.stage1)), row.stage1);
        EXPECT_EQ(format_paper_notation(parse_paper_notation(row.stage2)), row.stage2);
    }
}

TEST(Notation, ParseErrors) {
    for (const char* bad : {"", "S", "S_", "S_4", "S_4(", "S_4()", "S_4(1,", "S_{4,2(1,1)", "S_4(1,1)",
                            "S_{4,4}(1,1)", "S_{4,2}(1,1)x", "T_4(1,0)", "S_4(-1,0)", "S_4(12345678,0)"}) {
        EXPECT_THROW(parse_paper_notation(bad), SequenceError) << bad;
    }
}

TEST(Notation, ErrorsNameTheOffset) {
    try {
        parse_paper_notation("S_{4,2}(1;1)");
        FAIL() << "no exception";
    } catch (const SequenceError& e) {
        EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos);
    }
}

// Property: formatting then parsing is the identity on normalized sequences.
TEST(Notation, RandomRoundTrip) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 12)(rng);
        const int m = std::uniform_int_distribution<int>(2, n - 1)(rng);
        std::vector<Block> blocks;
        const int q = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int i = 0; i < q; ++i) {
            blocks.push_back({i % 2 ? K::local : K::global, std::uniform_int_distribution<int>(0, 4)(rng)});
        }
        const SequenceSpec s(n, m, blocks);
        const std::string text = format_paper_notation(s);
        EXPECT_EQ(parse_paper_notation(text), s) << text;
        std::ostringstream os;
        os << s;
        EXPECT_EQ(os.str(), text);
    }
}

TEST(TwoStagePlan, Widths) {
    const TwoStagePlan plan(4, 2, parse_paper_notation("S_{4,2}(1,2)"), parse_paper_notation("S_2(1,0)"));
    EXPECT_EQ(plan.m1(), 2);
    EXPECT_EQ(plan.m2(), 2);
    EXPECT_FALSE(plan.m_prime().has_value());
    const TwoStagePlan nested(8, 5, parse_paper_notation("S_{8,5}(1,4,1,2)"), parse_paper_notation("S_{5,4}(1,1,2)"));
    EXPECT_EQ(nested.m_prime(), 4);
}

TEST(TwoStagePlan, RejectsMismatchedStages) {
    const SequenceSpec s1 = parse_paper_notation("S_{4,2}(1,2)");
    EXPECT_THROW(TwoStagePlan(4, 3, s1, SequenceSpec::grover(3, 1)), SequenceError);
    EXPECT_THROW(TwoStagePlan(4, 2, s1, SequenceSpec::grover(3, 1)), SequenceError);
    EXPECT_THROW(TwoStagePlan(4, 2, SequenceSpec::grover(5, 1), SequenceSpec::grover(2, 1)), SequenceError);
    EXPECT_THROW(TwoStagePlan(4, 0, SequenceSpec(), SequenceSpec::grover(2, 1)), SequenceError);
    EXPECT_THROW(TwoStagePlan(4, 4, SequenceSpec::grover(4, 1), SequenceSpec::grover(4, 1)), SequenceError);
    EXPECT_NO_THROW(TwoStagePlan(4, 4, SequenceSpec::grover(4, 0), SequenceSpec::grover(4, 1)));
    // A pure Grover first stage is allowed with any m2.
    EXPECT_NO_THROW(TwoStagePlan(4, 2, SequenceSpec::grover(4, 1), SequenceSpec::grover(2, 1)));
}

}  // namespace
}  // namespace qsearch
