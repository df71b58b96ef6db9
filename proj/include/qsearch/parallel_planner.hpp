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

// Plans for running one search on several identical machines.
//
// Machines run in lock step: a round is one execution of each machine's
// sequence, and a round succeeds when the combined measurements reveal the
// target. Only probabilities and depths are modeled.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsearch/cost_model.hpp"
#include "qsearch/enumerate.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/optimizer.hpp"
#include "qsearch/sequence.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

enum class ParallelStrategy { replicated, random_guess, multistage_partition };

inline std::string to_string(ParallelStrategy s) {
    switch (s) {
        case ParallelStrategy::replicated: return "replicated";
        case ParallelStrategy::random_guess: return "random_guess";
        case ParallelStrategy::multistage_partition: return "multistage_partition";
    }
    return "?";
}

struct ParallelPlan {
    ParallelStrategy strategy = ParallelStrategy::replicated;
    int n = 0;
    int machines = 1;
    /// One sequence for replicated and random-guess plans; one per part otherwise.
    std::vector<SequenceSpec> per_machine;
    /// Success probability of one machine's own measurement.
    double machine_probability = 0.0;
    double success_per_round = 0.0;
    double expected_rounds = std::numeric_limits<double>::infinity();
    /// Depth of one round (every machine runs in parallel).
    double round_depth = 0.0;

    // random_guess
    int guess_bits = 0;
    std::uint64_t covered_guesses = 0;
    bool speedup_loss = false;

    // multistage_partition
    int part_width = 0;
    int local_count = 0;
    bool dominated_by_guess = false;

    double expected_depth() const { return round_depth * expected_rounds; }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (speedup_loss) {
            w.push_back("more than half of the bits are guessed; the quadratic speedup is lost");
        }
        if (dominated_by_guess) {
            w.push_back("one bit per machine; a random-guess one-bit search does at least as well");
        }
        return w;
    }
};

/// 1 - (1 - p)^machines.
inline double replicated_success(double p, int machines) {
    if (machines < 1) throw std::invalid_argument("need at least one machine");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
    return 1.0 - std::pow(1.0 - p, machines);
}

namespace detail {

inline void check_threshold(double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("probability threshold " + std::to_string(threshold) + " outside (0, 1]");
    }
}

inline void finish_rounds(ParallelPlan& plan) {
    plan.expected_rounds =
        plan.success_per_round > 0.0 ? 1.0 / plan.success_per_round : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Bounds used by replicated plans when the caller gives none: the one-stage
/// limits, with pure-local schedules allowed since low-probability pools are
/// dominated by them.
inline EnumerationBounds replicated_bounds(int n, double alpha) {
    EnumerationBounds b = EnumerationBounds::one_stage(n, alpha);
    b.min_global = 0;
    return b;
}

/// Every admissible one-stage sequence with success probability in (0, threshold].
/// Exhaustive; meant for small n.
inline std::vector<OptResult> replicated_candidates(int n, const DepthParams& params, double threshold,
                                                    const std::optional<EnumerationBounds>& bounds = std::nullopt) {
    detail::check_threshold(threshold);
    params.validate();
    const EnumerationBounds b = bounds.value_or(replicated_bounds(n, params.alpha));
    std::vector<OptResult> pool;
    std::set<int> seen_grover;
    for (int m = 2; m < n; ++m) {
        const Subspace sub = Subspace::blocked(n, m);
        enumerate_sequences(sub, StageCosts::of(params.table, n, sub), b, [&](const SequenceNode& node) {
            const double p = node.state.target_probability();
            if (!b.scorable(node.globals, node.locals) || !(p > 0.0) || p > threshold) return true;
            if (node.locals == 0) {
                // Pure-global sequences reappear under every m.
                if (!seen_grover.insert(node.globals).second) return true;
            }
            pool.push_back(evaluate_sequence(
                sequence_from_ops(n, node.locals ? std::optional<int>(m) : std::nullopt, node.ops), params));
            return true;
        });
    }
    return pool;
}

/// Every machine runs the same sequence: the MED one among those whose success
/// probability is at most `threshold`.
inline ParallelPlan plan_replicated(int n, const DepthParams& params, int machines, double threshold,
                                    const std::optional<EnumerationBounds>& bounds = std::nullopt) {
    detail::check_threshold(threshold);
    if (machines < 1) throw std::invalid_argument("need at least one machine");
    SearchOptions opts;
    opts.max_probability = threshold;
    OptResult best;
    try {
        best = optimize_one_stage(n, params, bounds.value_or(replicated_bounds(n, params.alpha)), opts);
    } catch (const InfeasibleError&) {
        throw InfeasibleError("no admissible sequence has success probability in (0, " + std::to_string(threshold) +
                              "]");
    }
    ParallelPlan plan;
    plan.strategy = ParallelStrategy::replicated;
    plan.n = n;
    plan.machines = machines;
    plan.per_machine = {best.sequence};
    plan.machine_probability = best.probability;
    plan.success_per_round = replicated_success(best.probability, machines);
    plan.round_depth = best.single_run_depth;
    detail::finish_rounds(plan);
    return plan;
}

/// Optimal search over w qubits used after the other bits have been guessed.
inline OptResult guessed_search(int w, const DepthParams& params) {
    if (w < 1) throw std::invalid_argument("search width must be positive");
    if (w == 1) {
        // Nothing to amplify: measuring |s_1> finds the last bit half the time.
        OptResult r;
        r.kind = MedKind::grover;
        r.sequence = SequenceSpec(1, std::nullopt, {});
        r.probability = r.stage1_probability = 0.5;
        r.expected_depth = 0.0;
        return r;
    }
    const DepthParams sub(params.alpha, params.table, w);
    if (w == 2) return optimize_grover(2, sub);
    return optimize_one_stage(w, sub, EnumerationBounds::one_stage(w, params.alpha));
}

/// Machines fix distinct guesses for the top `guess_bits` bits and search the
/// rest. `guesses` lists each machine's guess; by default machine k guesses k.
inline ParallelPlan plan_random_guess(int n, const DepthParams& params, int machines, int guess_bits,
                                      const std::vector<std::uint64_t>& guesses = {}) {
    if (guess_bits < 1 || guess_bits >= n) {
        throw std::out_of_range("guess bits g=" + std::to_string(guess_bits) + " outside [1, " +
                                std::to_string(n - 1) + "]");
    }
    if (machines < 1) throw std::invalid_argument("need at least one machine");
    const std::uint64_t space = std::uint64_t{1} << guess_bits;
    std::set<std::uint64_t> distinct;
    if (guesses.empty()) {
        for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(machines) && k < space; ++k) distinct.insert(k);
    } else {
        if (static_cast<int>(guesses.size()) != machines) {
            throw std::invalid_argument("expected one guess per machine");
        }
        for (std::uint64_t g : guesses) {
            if (g >= space) throw std::out_of_range("guess " + std::to_string(g) + " needs more than g bits");
            distinct.insert(g);
        }
    }
    const OptResult search = guessed_search(n - guess_bits, params);
    ParallelPlan plan;
    plan.strategy = ParallelStrategy::random_guess;
    plan.n = n;
    plan.machines = machines;
    plan.per_machine = {search.sequence};
    plan.machine_probability = search.probability;
    plan.guess_bits = guess_bits;
    plan.covered_guesses = distinct.size();
    plan.speedup_loss = 2 * guess_bits > n;
    plan.success_per_round = static_cast<double>(distinct.size()) / static_cast<double>(space) * search.probability;
    plan.round_depth = search.single_run_depth;
    detail::finish_rounds(plan);
    return plan;
}

/// Round success for one concrete target under a random-guess plan's guesses.
inline double random_guess_success_for(const ParallelPlan& plan, const std::vector<std::uint64_t>& guesses,
                                       std::uint64_t target) {
    const std::uint64_t prefix = target >> (plan.n - plan.guess_bits);
    for (std::uint64_t g : guesses) {
        if (g == prefix) return plan.machine_probability;
    }
    return 0.0;
}

struct PartitionCandidate {
    SequenceSpec sequence;
    double probability = 0.0;  // block probability, or target probability when one machine reveals everything
    int locals = 0;
    double depth = 0.0;
};

namespace detail {

/// Walks the sequences one partition machine may run and reports those that
/// reach `threshold`. With `prune`, subtrees that cannot beat the incumbent
/// under (max locals, min depth) are skipped.
template <class Report>
void walk_partition(int n, int part_width, const DepthParams& params, double threshold, const EnumerationBounds& bounds,
                    bool prune, Report&& report) {
    const double alpha = params.alpha;
    const bool whole = part_width == n;
    const int m_lo = whole ? 2 : n - part_width;
    const int m_hi = whole ? n - 1 : n - part_width;
    std::optional<PartitionCandidate> incumbent;
    for (int m = m_lo; m <= m_hi; ++m) {
        const Subspace sub = Subspace::blocked(n, m);
        const StageCosts costs = StageCosts::of(params.table, n, sub);
        const Objective objective = whole ? Objective::target : Objective::block;
        ReachBound reach(sub, costs.global_cost(alpha), costs.local_cost(alpha), objective);
        enumerate_sequences(sub, costs, bounds, [&](const SequenceNode& node) {
            const double depth = node.depth(alpha);
            const int local_cap = bounds.max_local_for(node.globals);
            if (prune && incumbent) {
                if (local_cap < incumbent->locals) return false;
                if (local_cap == incumbent->locals && depth >= incumbent->depth) return false;
            }
            const double p = objective_value(node.state, objective);
            // A trailing local operator leaves the block measurement unchanged.
            const bool ends_global = node.ops.empty() ? false : node.ops.back() == OperatorKind::global;
            if (bounds.scorable(node.globals, node.locals) && p >= threshold && (whole || ends_global)) {
                PartitionCandidate c{sequence_from_ops(n, node.locals ? std::optional<int>(m) : std::nullopt, node.ops),
                                     p, node.locals, depth};
                const bool better = !incumbent || c.locals > incumbent->locals ||
                                    (c.locals == incumbent->locals && c.depth < incumbent->depth);
                if (better) incumbent = c;
                report(c);
            }
            if (!prune) return true;
            const int more_globals = bounds.max_global - node.globals;
            const int more_locals = std::max(0, local_cap - node.locals);
            const double reachable_extra =
                more_globals * costs.global_cost(alpha) + more_locals * costs.local_cost(alpha);
            reach.set_state(node.state);
            return reach.at(reachable_extra) >= threshold;
        });
    }
}

inline int partition_width(int n, int machines) {
    if (machines < 1) throw std::invalid_argument("need at least one machine");
    if (n % machines != 0) {
        throw std::invalid_argument(std::to_string(machines) + " machines do not divide n=" + std::to_string(n));
    }
    const int width = n / machines;
    if (width != n && n - width < 2) {
        throw std::out_of_range("parts of " + std::to_string(width) + " bits leave fewer than 2 local qubits");
    }
    return width;
}

}  // namespace detail

/// 1 - 2^{-n/2}.
inline double default_partition_threshold(int n) { return 1.0 - std::pow(2.0, -0.5 * n); }

/// Every sequence part 1 of a `machines`-way partition may run. Exhaustive.
inline std::vector<PartitionCandidate> partition_candidates(int n, const DepthParams& params, int machines,
                                                            double threshold,
                                                            const std::optional<EnumerationBounds>& bounds = std::nullopt) {
    detail::check_threshold(threshold);
    params.validate();
    const int width = detail::partition_width(n, machines);
    std::vector<PartitionCandidate> out;
    detail::walk_partition(n, width, params, threshold, bounds.value_or(EnumerationBounds::standard(n, params.alpha)),
                           false, [&](const PartitionCandidate& c) { out.push_back(c); });
    return out;
}

/// Splits the address into `machines` equal parts; machine k reveals part k
/// with probability at least `threshold`, preferring more local operators and
/// then lower depth. By symmetry every part uses the same sequence up to a
/// relabeling of qubits.
inline ParallelPlan plan_multistage_partition(int n, const DepthParams& params, int machines,
                                              std::optional<double> threshold = std::nullopt,
                                              const std::optional<EnumerationBounds>& bounds = std::nullopt) {
    const double cut = threshold.value_or(default_partition_threshold(n));
    detail::check_threshold(cut);
    params.validate();
    const int width = detail::partition_width(n, machines);
    std::optional<PartitionCandidate> best;
    detail::walk_partition(n, width, params, cut, bounds.value_or(EnumerationBounds::standard(n, params.alpha)), true,
                           [&](const PartitionCandidate& c) {
                               if (!best || c.locals > best->locals ||
                                   (c.locals == best->locals && c.depth < best->depth)) {
                                   best = c;
                               }
                           });
    if (!best) {
        throw InfeasibleError("no admissible sequence reveals a " + std::to_string(width) +
                              "-bit part with probability >= " + std::to_string(cut));
    }
    ParallelPlan plan;
    plan.strategy = ParallelStrategy::multistage_partition;
    plan.n = n;
    plan.machines = machines;
    plan.per_machine.assign(static_cast<std::size_t>(machines), best->sequence);
    plan.machine_probability = best->probability;
    plan.success_per_round = std::pow(best->probability, machines);
    plan.round_depth = best->depth;
    plan.part_width = width;
    plan.local_count = best->locals;
    plan.dominated_by_guess = machines == n && n > 1;
    detail::finish_rounds(plan);
    return plan;
}

}  // namespace qsearch
