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

// Minimal expected depth (MED) of Grover, one-stage and two-stage search.
//
//   d_G(alpha) = min_j          d(G_n^j) / P_n(j)
//   d_1(alpha) = min_{m, S}     d(S) / P(S)
//   d_2(alpha) = min_{m2, S1, S2} (d(S1) + d(S2)) / (P1(S1) P2(S2))
//
// One- and two-stage minima come from an exact branch and bound over the
// alternating sequences admitted by EnumerationBounds. Ties within a relative
// 1e-9 go to fewer oracle calls, then fewer blocks, then the smaller block
// list.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qsearch/cost_model.hpp"
#include "qsearch/enumerate.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/sequence.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

enum class MedKind { grover, one_stage, two_stage };

inline std::string to_string(MedKind k) {
    switch (k) {
        case MedKind::grover: return "grover";
        case MedKind::one_stage: return "one_stage";
        case MedKind::two_stage: return "two_stage";
    }
    return "?";
}

struct OptResult {
    MedKind kind = MedKind::grover;
    /// The schedule for grover / one_stage results; stage 1 for two_stage.
    SequenceSpec sequence;
    std::optional<TwoStagePlan> plan;
    double probability = 0.0;
    double stage1_probability = 0.0;
    double stage2_probability = 1.0;
    DepthBreakdown stage1_depth;
    DepthBreakdown stage2_depth;
    double single_run_depth = 0.0;
    double expected_depth = std::numeric_limits<double>::infinity();

    bool feasible() const { return std::isfinite(expected_depth); }

    /// Expected depth as a function of alpha with probabilities held fixed.
    double expected_depth_at(double alpha) const {
        return (stage1_depth.at(alpha) + stage2_depth.at(alpha)) / probability;
    }
};

namespace detail {

inline constexpr double kTieTolerance = 1e-9;

inline bool within_tie(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
    return std::fabs(a - b) <= kTieTolerance * std::max(1.0, std::fabs(b));
}

inline auto tie_key(const SequenceSpec& s) {
    std::vector<std::pair<int, int>> blocks;
    for (const Block& b : s.blocks()) blocks.emplace_back(b.kind == OperatorKind::global ? 0 : 1, b.count);
    return std::make_tuple(s.counts().oracle_calls, static_cast<int>(s.blocks().size()), blocks, s.m().value_or(0));
}

inline auto tie_key(const OptResult& r) {
    const int oracles = r.stage1_depth.oracle_calls + r.stage2_depth.oracle_calls;
    const int blocks = static_cast<int>(r.sequence.blocks().size()) +
                       (r.plan ? static_cast<int>(r.plan->stage2().blocks().size()) : 0);
    auto k1 = tie_key(r.sequence);
    auto k2 = r.plan ? tie_key(r.plan->stage2()) : tie_key(SequenceSpec());
    const int m2 = r.plan ? r.plan->m2() : 0;
    return std::make_tuple(oracles, blocks, std::get<2>(k1), std::get<3>(k1), m2, std::get<2>(k2), std::get<3>(k2));
}

/// Strict "a is preferred over b" under the documented tie rule.
inline bool preferred(const OptResult& a, const OptResult& b) {
    if (!b.feasible()) return a.feasible();
    if (!a.feasible()) return false;
    if (!within_tie(a.expected_depth, b.expected_depth)) return a.expected_depth < b.expected_depth;
    return tie_key(a) < tie_key(b);
}

inline double prune_limit(double best) { return best * (1.0 + kTieTolerance) + kTieTolerance; }

}  // namespace detail

/// Builds a one-stage result for `seq`, evaluated with `params`.
inline OptResult evaluate_sequence(const SequenceSpec& seq, const DepthParams& params) {
    OptResult r;
    r.kind = seq.is_pure_grover() ? MedKind::grover : MedKind::one_stage;
    r.sequence = seq;
    r.stage1_depth = sequence_depth(seq, params);
    r.probability = r.stage1_probability = success_probability(seq);
    r.single_run_depth = r.stage1_depth.total_depth;
    if (r.probability > 0.0) r.expected_depth = expected_depth(r.single_run_depth, r.probability);
    return r;
}

/// Evaluates a user-supplied two-stage plan without optimizing it.
inline OptResult evaluate_plan(const TwoStagePlan& plan, const DepthParams& params) {
    if (plan.n() != params.n) {
        throw SequenceError("plan is over " + std::to_string(plan.n()) + " qubits but n=" + std::to_string(params.n));
    }
    OptResult r;
    r.kind = MedKind::two_stage;
    r.sequence = plan.stage1();
    r.plan = plan;
    r.stage1_probability = plan.m2() == plan.n() ? 1.0 : block_success_probability(plan.stage1(), plan.m2());
    r.stage2_probability = success_probability(plan.stage2());
    r.probability = r.stage1_probability * r.stage2_probability;
    r.stage1_depth = sequence_depth(plan.stage1(), params);
    r.stage2_depth = sequence_depth(plan.stage2(), params);
    r.single_run_depth = r.stage1_depth.total_depth + r.stage2_depth.total_depth;
    if (r.probability > 0.0) r.expected_depth = expected_depth(r.single_run_depth, r.probability);
    return r;
}

/// d_G: minimizes j (alpha + 1) d(D_n) / P_n(j) over j >= 1 via the closed form.
inline OptResult optimize_grover(int n, const DepthParams& params) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    const int j_hi = std::max(4, 2 * grover_j_max(n) + 2);
    const double per_iteration = (params.alpha + 1.0) * diffusion_depth(params.table, n);
    int best_j = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= j_hi; ++j) {
        const double p = grover_probability_closed_form(n, j);
        if (p <= 0.0) continue;
        const double med = j * per_iteration / p;
        if (med < best && !detail::within_tie(med, best)) {
            best = med;
            best_j = j;
        }
    }
    OptResult r;
    r.kind = MedKind::grover;
    r.sequence = SequenceSpec::grover(n, best_j);
    r.stage1_depth = sequence_depth(r.sequence, params);
    r.probability = r.stage1_probability = grover_probability_closed_form(n, best_j);
    r.single_run_depth = r.stage1_depth.total_depth;
    r.expected_depth = r.single_run_depth / r.probability;
    return r;
}

struct SearchStats {
    long long nodes = 0;
};

/// Knobs shared by the one- and two-stage searches.
struct SearchOptions {
    /// Only report results strictly below this expected depth (outside the tie band).
    std::optional<double> beat;
    /// Stop at the first result that beats `beat`; the result is then not minimal.
    bool first_only = false;
    /// Two-stage only: restrict the split to this m2.
    std::optional<int> fixed_m2;
    /// Two-stage only: limits for the second stage; defaults to the standard bounds on m2.
    std::optional<EnumerationBounds> stage2_bounds;
    /// One-stage only: skip sequences whose success probability exceeds this cap.
    std::optional<double> max_probability;
    SearchStats* stats = nullptr;
};

namespace detail {

inline bool beats(double med, const SearchOptions& opts) {
    return !opts.beat || (med < *opts.beat && !within_tie(med, *opts.beat));
}

inline double initial_limit(const SearchOptions& opts) {
    return opts.beat ? *opts.beat : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// d_1: exact branch and bound over m in [2, n-1] and all admissible sequences.
/// Throws InfeasibleError when nothing admissible (and below `opts.beat`) exists.
inline OptResult optimize_one_stage(int n, const DepthParams& params, const EnumerationBounds& bounds,
                                    const SearchOptions& opts = {}) {
    if (n < 3) throw std::invalid_argument("one-stage optimization needs n >= 3");
    if (params.n != n) throw std::invalid_argument("depth parameters are for a different n");
    params.validate();
    const double alpha = params.alpha;

    OptResult best;
    long long nodes = 0;
    bool done = false;
    for (int m = 2; m < n && !done; ++m) {
        const Subspace sub = Subspace::blocked(n, m);
        const StageCosts costs = StageCosts::of(params.table, n, sub);
        ReachBound reach(sub, costs.global_cost(alpha), costs.local_cost(alpha), Objective::target);
        const double step = std::min(costs.global_cost(alpha), costs.local_cost(alpha));
        enumerate_sequences(sub, costs, bounds, [&](const SequenceNode& node) {
            if (done) return false;
            ++nodes;
            const double depth = node.depth(alpha);
            const double p = node.state.target_probability();
            const double limit =
                best.feasible() ? detail::prune_limit(best.expected_depth) : detail::initial_limit(opts);
            const bool capped = opts.max_probability && p > *opts.max_probability;
            if (bounds.scorable(node.globals, node.locals) && p > 0.0 && !capped && depth / p <= limit &&
                detail::beats(depth / p, opts)) {
                OptResult cand = evaluate_sequence(
                    sequence_from_ops(n, node.locals ? std::optional<int>(m) : std::nullopt, node.ops), params);
                if (detail::preferred(cand, best)) best = cand;
                if (opts.first_only) {
                    done = true;
                    return false;
                }
            }
            if (!std::isfinite(limit)) return true;
            reach.set_state(node.state);
            return may_satisfy([&](double e) { return depth + e; }, reach, limit, step, limit - depth);
        });
    }
    if (opts.stats) opts.stats->nodes += nodes;
    if (!best.feasible()) throw InfeasibleError("no admissible sequence with nonzero success probability");
    if (best.kind == MedKind::grover) best.kind = MedKind::one_stage;
    return best;
}

namespace detail {

/// One second-stage candidate over m2 qubits.
struct StageTwoOption {
    SequenceSpec sequence;
    double probability = 0.0;
    double depth = 0.0;
};

/// Second-stage sequences with depth / probability below `limit`, reduced to
/// the Pareto front of (lower depth, higher probability).
inline std::vector<StageTwoOption> stage_two_front(int n, int m2, const DepthParams& params,
                                                   const EnumerationBounds& bounds, double limit, long long& nodes) {
    const double alpha = params.alpha;
    std::vector<StageTwoOption> all;
    auto collect = [&](const Subspace& sub) {
        const StageCosts costs = StageCosts::of(params.table, n, sub);
        ReachBound reach(sub, costs.global_cost(alpha), costs.local_cost(alpha), Objective::target);
        const double step = std::min(costs.global_cost(alpha), costs.local_cost(alpha));
        const std::optional<int> m = sub.has_blocks() ? std::optional<int>(sub.m) : std::nullopt;
        enumerate_sequences(sub, costs, bounds, [&](const SequenceNode& node) {
            ++nodes;
            const double depth = node.depth(alpha);
            const double p = node.state.target_probability();
            if (p > 0.0 && bounds.scorable(node.globals, node.locals) && (node.locals > 0 || !m) && depth / p <= limit) {
                all.push_back({sequence_from_ops(m2, node.locals ? m : std::nullopt, node.ops), p, depth});
            }
            if (!std::isfinite(limit)) return true;
            reach.set_state(node.state);
            return may_satisfy([&](double e) { return depth + e; }, reach, limit, step, limit - depth);
        });
    };
    collect(Subspace::whole(m2));
    for (int mp = 2; mp < m2; ++mp) collect(Subspace::blocked(m2, mp));

    std::sort(all.begin(), all.end(), [](const StageTwoOption& a, const StageTwoOption& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        if (a.probability != b.probability) return a.probability > b.probability;
        return tie_key(a.sequence) < tie_key(b.sequence);
    });
    std::vector<StageTwoOption> front;
    for (const StageTwoOption& o : all) {
        // Keep options within the tie tolerance of the front so that tie-breaking sees them.
        if (front.empty() || o.probability > front.back().probability * (1.0 - kTieTolerance)) front.push_back(o);
    }
    return front;
}

}  // namespace detail

/// d_2: exact branch and bound over m2, stage-1 sequences over (n, m2) scored by
/// block probability, and stage-2 sequences over (m2, m') scored by target
/// probability. Stage-2 oracles keep the full cost alpha d(D_n).
inline OptResult optimize_two_stage(int n, const DepthParams& params, const EnumerationBounds& bounds,
                                    const SearchOptions& opts = {}) {
    if (n < 3) throw std::invalid_argument("two-stage optimization needs n >= 3");
    if (params.n != n) throw std::invalid_argument("depth parameters are for a different n");
    params.validate();
    const double alpha = params.alpha;
    long long nodes = 0;

    const int m2_lo = opts.fixed_m2.value_or(2);
    const int m2_hi = opts.fixed_m2.value_or(n - 1);
    if (m2_lo < 2 || m2_hi >= n) throw std::invalid_argument("m2 must lie in [2, n-1]");
    auto stage2_bounds = [&](int m2) {
        if (opts.stage2_bounds) return *opts.stage2_bounds;
        EnumerationBounds b = EnumerationBounds::standard(m2, alpha);
        b.max_blocks = std::min(b.max_blocks, bounds.max_blocks);
        return b;
    };

    OptResult best;
    auto current_limit = [&] {
        return best.feasible() ? detail::prune_limit(best.expected_depth) : detail::initial_limit(opts);
    };

    // Seed with Grover in both stages when those plans are admissible.
    if (!opts.first_only) {
        for (int m2 = m2_lo; m2 <= m2_hi; ++m2) {
            const EnumerationBounds b2 = stage2_bounds(m2);
            const int j2 = optimize_grover(m2, params).sequence.counts().globals;
            if (j2 > b2.max_global || !b2.admits(j2, 0, 1, j2)) continue;
            const SequenceSpec s2 = SequenceSpec::grover(m2, j2);
            for (int j1 = std::max(1, bounds.min_global); j1 <= bounds.max_global; ++j1) {
                if (!bounds.admits(j1, 0, 1, j1)) break;
                const OptResult r = evaluate_plan(TwoStagePlan(n, m2, SequenceSpec::grover(n, j1), s2), params);
                if (detail::beats(r.expected_depth, opts) && detail::preferred(r, best)) best = r;
            }
        }
    }

    bool done = false;
    for (int m2 = m2_lo; m2 <= m2_hi && !done; ++m2) {
        const std::vector<detail::StageTwoOption> front =
            detail::stage_two_front(n, m2, params, stage2_bounds(m2), current_limit(), nodes);
        if (front.empty()) continue;

        // H(x) = min over the front of (x + depth2) / p2.
        auto lower = [&](double x) {
            double h = std::numeric_limits<double>::infinity();
            for (const auto& o : front) h = std::min(h, (x + o.depth) / o.probability);
            return h;
        };

        const Subspace sub = Subspace::blocked(n, m2);
        const StageCosts costs = StageCosts::of(params.table, n, sub);
        ReachBound reach(sub, costs.global_cost(alpha), costs.local_cost(alpha), Objective::block);
        const double step = std::min(costs.global_cost(alpha), costs.local_cost(alpha));
        enumerate_sequences(sub, costs, bounds, [&](const SequenceNode& node) {
            if (done) return false;
            ++nodes;
            const double depth1 = node.depth(alpha);
            const double p1 = node.state.block_probability();
            double limit = current_limit();
            if (p1 > 0.0 && bounds.scorable(node.globals, node.locals) && lower(depth1) / p1 <= limit) {
                const SequenceSpec s1 =
                    sequence_from_ops(n, node.locals ? std::optional<int>(m2) : std::nullopt, node.ops);
                for (const auto& o : front) {
                    const double med = (depth1 + o.depth) / (p1 * o.probability);
                    if (med > limit || !detail::beats(med, opts)) continue;
                    const OptResult cand = evaluate_plan(TwoStagePlan(n, m2, s1, o.sequence), params);
                    if (detail::preferred(cand, best)) {
                        best = cand;
                        limit = current_limit();
                    }
                    if (opts.first_only) {
                        done = true;
                        return false;
                    }
                }
            }
            if (!std::isfinite(limit)) return true;
            reach.set_state(node.state);
            double e_max = -depth1;
            for (const auto& o : front) e_max = std::max(e_max, limit * o.probability - o.depth - depth1);
            return may_satisfy([&](double e) { return lower(depth1 + e); }, reach, limit, step, e_max);
        });
    }
    if (opts.stats) opts.stats->nodes += nodes;
    if (!best.feasible()) throw InfeasibleError("no admissible two-stage plan");
    return best;
}

}  // namespace qsearch
