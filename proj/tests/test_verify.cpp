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

#include "qsearch/verify.hpp"

namespace qsearch {
namespace {

VerifyOptions small_range() {
    VerifyOptions o;
    o.n_lo = 4;
    o.n_hi = 6;
    o.samples = 5;
    return o;
}

TEST(Verify, ShippedTablePasses) {
    const auto results = run_verification(GateDepthTable(), small_range());
    for (const CheckResult& r : results) EXPECT_TRUE(r.passed) << r.group << " " << r.name << ": " << r.detail;
    EXPECT_TRUE(all_passed(results));
    bool saw_table4 = false;
    for (const CheckResult& r : results) saw_table4 |= r.name.find("table4") != std::string::npos;
    EXPECT_TRUE(saw_table4);
}

TEST(Verify, CorruptedTableFailsGoldenChecks) {
    std::istringstream in("2,1\n3,5\n4,15\n5,29\n6,61\n7,120\n8,160\n9,200\n10,240\n");
    VerifyOptions o = small_range();
    o.golden_critical = false;
    const auto results = run_verification(GateDepthTable::from_stream(in), o);
    EXPECT_FALSE(all_passed(results));
    bool table1_failed = false;
    for (const CheckResult& r : results) {
        if (r.name.rfind("table1", 0) == 0 && !r.passed) table1_failed = true;
        if (r.group == "oracle" || r.group == "theorem") {
            EXPECT_TRUE(r.passed) << r.name;
        }
    }
    EXPECT_TRUE(table1_failed);
}

TEST(Verify, SkipsCriticalWhenAsked) {
    VerifyOptions o = small_range();
    o.golden_critical = false;
    for (const CheckResult& r : run_verification(GateDepthTable(), o)) {
        EXPECT_EQ(r.name.find("table4"), std::string::npos) << r.name;
    }
}

TEST(Verify, EmptyRangeRejected) {
    VerifyOptions o;
    o.n_lo = 8;
    o.n_hi = 6;
    EXPECT_THROW(run_verification(GateDepthTable(), o), std::invalid_argument);
}

TEST(RandomSequence, RespectsShape) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const SequenceSpec s = random_sequence(7, 3, 20, rng);
        const int ops = s.counts().oracle_calls;
        EXPECT_GE(ops, 1);
        EXPECT_LE(ops, 20);
        EXPECT_EQ(s.n(), 7);
        if (!s.is_pure_grover()) {
            EXPECT_EQ(s.m(), 3);
        }
    }
}

}  // namespace
}  // namespace qsearch
