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

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "qsearch/parallel_planner.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {
namespace {

DepthParams params_for(int n, double alpha = 1.0) { return DepthParams(alpha, GateDepthTable(), n); }

TEST(Replicated, SuccessFormula) {
    EXPECT_DOUBLE_EQ(replicated_success(0.5, 1), 0.5);
    EXPECT_DOUBLE_EQ(replicated_success(0.5, 3), 0.875);
    EXPECT_DOUBLE_EQ(replicated_success(0.0, 4), 0.0);
    EXPECT_DOUBLE_EQ(replicated_success(1.0, 4), 1.0);
    EXPECT_THROW(replicated_success(0.5, 0), std::invalid_argument);
    EXPECT_THROW(replicated_success(1.5, 2), std::invalid_argument);
}

TEST(Replicated, CandidatePool) {
    const auto pool = replicated_candidates(6, params_for(6), 0.2);
    ASSERT_FALSE(pool.empty());
    std::set<std::string> names;
    for (const OptResult& r : pool) {
        EXPECT_GT(r.probability, 0.0);
        EXPECT_LE(r.probability, 0.2);
        EXPECT_TRUE(names.insert(format_paper_notation(r.sequence)).second) << "duplicate " << r.sequence;
    }
    EXPECT_TRUE(names.count("S_{6,4}(1)"));
    EXPECT_TRUE(names.count("S_6(1,0)"));
}

TEST(Replicated, PlanPicksPoolMinimum) {
    for (double cap : {0.15, 0.3, 0.6, 1.0}) {
        const auto pool = replicated_candidates(6, params_for(6), cap);
        double want = std::numeric_limits<double>::infinity();
        for (const OptResult& r : pool) want = std::min(want, r.expected_depth);
        const ParallelPlan plan = plan_replicated(6, params_for(6), 4, cap);
        const OptResult chosen = evaluate_sequence(plan.per_machine.front(), params_for(6));
        EXPECT_NEAR(chosen.expected_depth, want, 1e-9 * want) << cap;
        EXPECT_LE(plan.machine_probability, cap);
        EXPECT_DOUBLE_EQ(plan.success_per_round, replicated_success(plan.machine_probability, 4));
        EXPECT_DOUBLE_EQ(plan.expected_rounds, 1.0 / plan.success_per_round);
        EXPECT_DOUBLE_EQ(plan.expected_depth(), plan.round_depth / plan.success_per_round);
        EXPECT_EQ(plan.strategy, ParallelStrategy::replicated);
    }
}

TEST(Replicated, LowCapFavoursSingleLocalStep) {
    const ParallelPlan plan = plan_replicated(6, params_for(6), 8, 0.12);
    EXPECT_EQ(format_paper_notation(plan.per_machine.front()), "S_{6,4}(1)");
}

TEST(Replicated, Errors) {
    EXPECT_THROW(plan_replicated(6, params_for(6), 0, 0.5), std::invalid_argument);
    EXPECT_THROW(plan_replicated(6, params_for(6), 2, 0.0), std::invalid_argument);
    EXPECT_THROW(plan_replicated(6, params_for(6), 2, 1.2), std::invalid_argument);
    EXPECT_THROW(plan_replicated(6, params_for(6), 2, 1e-6), InfeasibleError);
}

TEST(RandomGuess, TwoRemainingBitsAreExact) {
    const ParallelPlan plan = plan_random_guess(6, params_for(6), 4, 4);
    EXPECT_NEAR(plan.machine_probability, 1.0, 1e-12);
    EXPECT_EQ(format_paper_notation(plan.per_machine.front()), "S_2(1,0)");
    EXPECT_EQ(plan.covered_guesses, 4u);
    EXPECT_NEAR(plan.success_per_round, 4.0 / 16.0, 1e-12);
    EXPECT_TRUE(plan.speedup_loss);
    EXPECT_EQ(plan.warnings().size(), 1u);
}

TEST(RandomGuess, OneRemainingBitIsACoinFlip) {
    const ParallelPlan plan = plan_random_guess(4, params_for(4), 2, 3);
    EXPECT_DOUBLE_EQ(plan.machine_probability, 0.5);
    EXPECT_DOUBLE_EQ(plan.round_depth, 0.0);
}

TEST(RandomGuess, RemainingSearchIsOptimalOneStage) {
    const ParallelPlan plan = plan_random_guess(8, params_for(8), 2, 3);
    // The 5-bit search is the one-stage optimum for n = 5 with the 5-qubit oracle.
    const OptResult direct = optimize_one_stage(5, params_for(5), EnumerationBounds::one_stage(5, 1.0));
    EXPECT_EQ(plan.per_machine.front(), direct.sequence);
    EXPECT_DOUBLE_EQ(plan.round_depth, direct.single_run_depth);
    EXPECT_FALSE(plan.speedup_loss);
    EXPECT_TRUE(plan.warnings().empty());
}

TEST(RandomGuess, AverageOverTargetsMatchesRoundSuccess) {
    const std::vector<std::uint64_t> guesses{1, 5, 5};
    const ParallelPlan plan = plan_random_guess(7, params_for(7), 3, 3, guesses);
    EXPECT_EQ(plan.covered_guesses, 2u);
    double total = 0.0;
    for (std::uint64_t t = 0; t < 128; ++t) total += random_guess_success_for(plan, guesses, t);
    EXPECT_NEAR(total / 128.0, plan.success_per_round, 1e-12);
}

TEST(RandomGuess, MachineProbabilityMatchesStateVector) {
    const ParallelPlan plan = plan_random_guess(7, params_for(7), 2, 2);
    const SequenceSpec& s = plan.per_machine.front();
    const TargetSpec t(5, 19);
    EXPECT_NEAR(target_probability(run_sequence_full(s, t), t), plan.machine_probability, 1e-10);
}

TEST(RandomGuess, Errors) {
    EXPECT_THROW(plan_random_guess(6, params_for(6), 2, 0), std::out_of_range);
    EXPECT_THROW(plan_random_guess(6, params_for(6), 2, 6), std::out_of_range);
    EXPECT_THROW(plan_random_guess(6, params_for(6), 0, 2), std::invalid_argument);
    EXPECT_THROW(plan_random_guess(6, params_for(6), 2, 2, {1}), std::invalid_argument);
    EXPECT_THROW(plan_random_guess(6, params_for(6), 2, 2, {1, 4}), std::out_of_range);
}

TEST(Partition, DefaultThreshold) {
    EXPECT_DOUBLE_EQ(default_partition_threshold(4), 0.75);
    EXPECT_DOUBLE_EQ(default_partition_threshold(6), 0.875);
}

TEST(Partition, CandidatesAtN4) {
    const auto cands = partition_candidates(4, params_for(4), 2, 0.95);
    bool found = false;
    for (const PartitionCandidate& c : cands) {
        EXPECT_GE(c.probability, 0.95);
        EXPECT_EQ(c.sequence.expand().back(), OperatorKind::global);
        if (format_paper_notation(c.sequence) == "S_{4,2}(1,2)") {
            found = true;
            EXPECT_NEAR(c.probability, 1.0, 1e-12);
        }
    }
    EXPECT_TRUE(found);
}

TEST(Partition, PlanMaximizesLocalsThenDepth) {
    for (int n : {4, 6}) {
        for (int machines : {2, n / 2}) {
            const auto cands = partition_candidates(n, params_for(n), machines, default_partition_threshold(n));
            ASSERT_FALSE(cands.empty());
            const auto best = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
                return a.locals != b.locals ? a.locals > b.locals : a.depth < b.depth;
            });
            const ParallelPlan plan = plan_multistage_partition(n, params_for(n), machines);
            EXPECT_EQ(plan.local_count, best->locals);
            EXPECT_DOUBLE_EQ(plan.round_depth, best->depth);
            EXPECT_EQ(plan.per_machine.size(), static_cast<std::size_t>(machines));
            EXPECT_NEAR(plan.success_per_round, std::pow(plan.machine_probability, machines), 1e-15);
        }
    }
}

TEST(Partition, KnownPlans) {
    const ParallelPlan two = plan_multistage_partition(4, params_for(4), 2);
    EXPECT_EQ(format_paper_notation(two.per_machine.front()), "S_{4,2}(1,3)");
    EXPECT_NEAR(two.machine_probability, 0.953, 1e-3);
    EXPECT_EQ(two.part_width, 2);

    const ParallelPlan one = plan_multistage_partition(4, params_for(4), 1);
    EXPECT_EQ(format_paper_notation(one.per_machine.front()), "S_{4,2}(1,1,2)");

    const ParallelPlan three = plan_multistage_partition(6, params_for(6), 3);
    EXPECT_EQ(format_paper_notation(three.per_machine.front()), "S_{6,4}(1,7)");

    const ParallelPlan bitwise = plan_multistage_partition(3, params_for(3), 3);
    EXPECT_EQ(format_paper_notation(bitwise.per_machine.front()), "S_{3,2}(1,1)");
    EXPECT_TRUE(bitwise.dominated_by_guess);
    EXPECT_EQ(bitwise.warnings().size(), 1u);
}

TEST(Partition, BlockProbabilityMatchesStateVector) {
    const ParallelPlan plan = plan_multistage_partition(6, params_for(6), 3);
    const TargetSpec t(6, 45);
    const StateVector full = run_sequence_full(plan.per_machine.front(), t);
    EXPECT_NEAR(block_marginal(full, t, 6 - plan.part_width), plan.machine_probability, 1e-10);
}

TEST(Partition, Errors) {
    EXPECT_THROW(plan_multistage_partition(5, params_for(5), 2), std::invalid_argument);
    EXPECT_THROW(plan_multistage_partition(4, params_for(4), 0), std::invalid_argument);
    EXPECT_THROW(plan_multistage_partition(4, params_for(4), 2, 0.0), std::invalid_argument);
    EXPECT_THROW(partition_candidates(2, params_for(2), 2, 0.5), std::out_of_range);
}

TEST(Strategy, Names) {
    EXPECT_EQ(to_string(ParallelStrategy::replicated), "replicated");
    EXPECT_FALSE(to_string(ParallelStrategy::random_guess).empty());
    EXPECT_FALSE(to_string(ParallelStrategy::multistage_partition).empty());
}

}  // namespace
}  // namespace qsearch
