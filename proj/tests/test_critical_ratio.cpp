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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qsearch/critical_ratio.hpp"
#include "qsearch/golden.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {
namespace {

constexpr double kTarget = -0.5 * std::numbers::ln2;

TEST(Critical, Table4) {
    for (const auto& row : golden::kCritical) {
        const CriticalResult one = critical_alpha(row.n, CriticalMode::one_stage, GateDepthTable());
        ASSERT_TRUE(one.present()) << row.n;
        EXPECT_NEAR(*one.alpha_c, row.alpha_c1, golden::kCriticalTolerance) << row.n;
        EXPECT_EQ(one.method, SearchMethod::exhaustive);

        const CriticalResult two = critical_alpha(row.n, CriticalMode::two_stage, GateDepthTable());
        ASSERT_EQ(two.present(), row.alpha_c2.has_value()) << row.n;
        if (row.alpha_c2) {
            EXPECT_NEAR(*two.alpha_c, *row.alpha_c2, golden::kCriticalTolerance) << row.n;
        }
    }
}

TEST(Critical, AbsentTwoStageAtN4) {
    const CriticalResult r = critical_alpha(4, CriticalMode::two_stage, GateDepthTable());
    EXPECT_FALSE(r.present());
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(r.evaluations, 1);
}

TEST(Critical, BracketIsCertified) {
    for (int n = 4; n <= 7; ++n) {
        for (auto mode : {CriticalMode::one_stage, CriticalMode::two_stage}) {
            CriticalOptions opts;
            const CriticalResult r = critical_alpha(n, mode, GateDepthTable(), opts);
            if (!r.present()) continue;
            EXPECT_LE(r.bracket_hi - r.bracket_lo, opts.tol);
            const detail::CriticalPredicate pred(n, mode, GateDepthTable(), opts, r.method);
            EXPECT_TRUE(pred(r.bracket_lo, false).holds) << n;
            EXPECT_FALSE(pred(r.bracket_hi, false).holds) << n;
        }
    }
}

TEST(Critical, WitnessBeatsGroverAtAlphaC) {
    const CriticalResult r = critical_alpha(7, CriticalMode::one_stage, GateDepthTable());
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LT(r.witness->expected_depth, r.grover_med);
    EXPECT_EQ(format_paper_notation(r.witness->sequence), "S_{7,6}(1,1,1,2,1)");
    const CriticalResult t = critical_alpha(6, CriticalMode::two_stage, GateDepthTable());
    ASSERT_TRUE(t.witness && t.witness->plan);
    EXPECT_EQ(t.witness->plan->m2(), 2);
    EXPECT_LT(t.witness->expected_depth, t.grover_med);
}

TEST(Critical, StructuredIsALowerBound) {
    for (int n = 4; n <= 8; ++n) {
        for (auto mode : {CriticalMode::one_stage, CriticalMode::two_stage}) {
            if (mode == CriticalMode::two_stage && n == 4) continue;
            CriticalOptions ex;
            ex.method = SearchMethod::exhaustive;
            CriticalOptions st;
            st.method = SearchMethod::structured;
            const double exact = *critical_alpha(n, mode, GateDepthTable(), ex).alpha_c;
            const CriticalResult s = critical_alpha(n, mode, GateDepthTable(), st);
            const double structured = s.alpha_c.value_or(0.0);
            EXPECT_LE(structured, exact + 2 * ex.tol) << n;
            EXPECT_EQ(s.method, SearchMethod::structured);
        }
    }
}

TEST(Critical, AutomaticSwitchesToStructuredAboveThreshold) {
    CriticalOptions opts;
    opts.exhaustive_max_n = 5;
    const CriticalResult r = critical_alpha(6, CriticalMode::two_stage, GateDepthTable(), opts);
    EXPECT_EQ(r.method, SearchMethod::structured);
    EXPECT_NEAR(*r.alpha_c, 1.53, golden::kCriticalTolerance);
}

TEST(Critical, ArgumentChecks) {
    EXPECT_THROW(critical_alpha(2, CriticalMode::one_stage, GateDepthTable()), std::invalid_argument);
    EXPECT_THROW(critical_alpha(3, CriticalMode::two_stage, GateDepthTable()), std::invalid_argument);
    CriticalOptions bad_tol;
    bad_tol.tol = 0.0;
    EXPECT_THROW(critical_alpha(5, CriticalMode::one_stage, GateDepthTable(), bad_tol), std::invalid_argument);
    CriticalOptions bad_range;
    bad_range.alpha_ceiling = 0.5;
    EXPECT_THROW(critical_alpha(5, CriticalMode::one_stage, GateDepthTable(), bad_range), std::invalid_argument);
    EXPECT_THROW(critical_alpha(11, CriticalMode::one_stage, GateDepthTable()), std::out_of_range);
}

TEST(Critical, CeilingRaisesConvergenceError) {
    CriticalOptions opts;
    opts.alpha_ceiling = 8.0;
    EXPECT_THROW(critical_alpha(7, CriticalMode::one_stage, GateDepthTable(), opts), ConvergenceError);
}

TEST(Sandwich, EigenStructure) {
    for (int n = 4; n <= 14; ++n) {
        const TheoremDiagnostics d = sandwich_matrix(n);
        EXPECT_LT(d.product_error, 1e-10) << n;
        EXPECT_LT(std::abs(d.lambda0 + 1.0), 1e-10);
        EXPECT_NEAR(std::abs(d.lambda_plus), 1.0, 1e-10);
        EXPECT_NEAR(std::abs(d.lambda_minus), 1.0, 1e-10);
        EXPECT_LT(std::abs(d.lambda_plus - std::conj(d.lambda_minus)), 1e-10);
        EXPECT_LT(d.eigen_residual, 1e-10);
        EXPECT_LT(d.reconstruction_error, 1e-10);
        EXPECT_LT(d.t_overlap_v0, 1e-10);
        EXPECT_NEAR(d.t_overlap_plus_sq, 0.5, 1e-10);
        EXPECT_NEAR(d.t_overlap_minus_sq, 0.5, 1e-10);
        EXPECT_NEAR(d.rotation_angle, d.trace_angle, 1e-10);
    }
}

TEST(Sandwich, TargetOverlapPhases) {
    const TheoremDiagnostics d = sandwich_matrix(6);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_LT(std::abs(d.v_plus[0] - std::complex<double>(0.0, -h)), 1e-12);
    EXPECT_LT(std::abs(d.v_minus[0] - std::complex<double>(0.0, h)), 1e-12);
}

TEST(Sandwich, RotationAngleFormula) {
    // tan g = D / (1 + cos 6 theta2), D = sqrt(3 - 2 cos 6 theta2 - cos^2 6 theta2).
    for (int n = 4; n <= 12; ++n) {
        const TheoremDiagnostics d = sandwich_matrix(n);
        const double c6 = std::cos(6.0 * d.theta2);
        const double delta = std::sqrt(3.0 - 2.0 * c6 - c6 * c6);
        EXPECT_NEAR(std::tan(d.rotation_angle), delta / (1.0 + c6), 1e-10) << n;
    }
}

TEST(Theorems, StartingProbabilities) {
    for (int n = 4; n <= 12; ++n) {
        const double big_n = std::ldexp(1.0, n);
        EXPECT_NEAR(theorem1_probability_check(n, 0).exact, 1.0 / big_n, 1e-15);
        EXPECT_NEAR(theorem2_probability_check(n, 0).exact, 4.0 / big_n, 1e-15);
    }
}

TEST(Theorems, ProductMatrix) {
    for (int n = 4; n <= 14; ++n) EXPECT_LT(theorem2_matrix_error(n), 1e-10) << n;
}

TEST(Theorems, AsymptoticGapsShrink) {
    std::vector<double> xs, g1, g2;
    for (int n = 8; n <= 14; ++n) {
        xs.push_back(n);
        g1.push_back(theorem1_max_gap(n));
        g2.push_back(theorem2_max_gap(n));
    }
    EXPECT_NEAR(log_slope(xs, g1), kTarget, 0.2 * std::fabs(kTarget));
    EXPECT_NEAR(log_slope(xs, g2), kTarget, 0.2 * std::fabs(kTarget));
    // Regression values.
    EXPECT_NEAR(log_slope(xs, g1), -0.335723, 1e-5);
    EXPECT_NEAR(log_slope(xs, g2), -0.347164, 1e-5);
}

TEST(Theorems, PeakProbabilityNearOne) {
    const ProbabilityCheck c = theorem1_probability_check(10, 8);
    EXPECT_NEAR(c.exact, 0.998283, 1e-6);
    EXPECT_NEAR(c.asymptotic, 0.995065, 1e-6);
    EXPECT_NEAR(c.gap(), std::fabs(c.exact - c.asymptotic), 1e-15);

    // Independent check: eight sandwiches G_9 G_10 G_9 on the full register.
    const SequenceSpec sandwich = parse_paper_notation("S_{10,9}(1,1,1)");
    SequenceSpec seq = sandwich;
    for (int k = 1; k < 8; ++k) seq = seq.then(sandwich);
    const TargetSpec target(10, 677);
    EXPECT_NEAR(target_probability(run_sequence_full(seq, target), target), c.exact, 1e-10);
}

TEST(LogSlope, RecoversExponent) {
    std::vector<double> xs{1, 2, 3, 4, 5}, ys;
    for (double x : xs) ys.push_back(3.0 * std::exp(-0.7 * x));
    EXPECT_NEAR(log_slope(xs, ys), -0.7, 1e-12);
}

TEST(Sandwich, WitnessBelowCriticalRatio) {
    const GateDepthTable table;
    for (int n = 6; n <= 8; ++n) {
        const double s = sandwich_critical_alpha(n, table);
        const double c = *critical_alpha(n, CriticalMode::one_stage, table).alpha_c;
        EXPECT_GT(s, 1.0);
        EXPECT_LE(s, c + 0.01) << n;
    }
}

}  // namespace
}  // namespace qsearch
