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

// Depth-first enumeration of alternating global/local operator sequences,
// plus the reachability bound used to prune it.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsearch/cost_model.hpp"
#include "qsearch/sequence.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

/// Limits on the sequences an optimizer may consider.
///
/// The global cap is floor(0.69 sqrt(N)); given j globals, local operators are
/// capped at floor((0.69 sqrt(N) - j)(alpha + 1) / alpha). The block count is
/// capped at 2n. One-stage searches additionally cap the oracle count at
/// j_exp + 1; without it, n = 10 at alpha = 1 admits S_{10,5}(1,1,3,1,4,1,4,1,4)
/// (20 oracles, MED 7613.09), just below the tabulated optimum.
struct EnumerationBounds {
    double budget = 0.0;  // 0.69 sqrt(N)
    double alpha = 1.0;
    int min_global = 1;  // every stage applies at least one global operator
    int max_global = 0;
    int max_blocks = 0;
    std::optional<int> max_oracle_calls;
    std::optional<int> max_block_length;

    static EnumerationBounds standard(int n, double alpha, std::optional<int> max_blocks = std::nullopt) {
        EnumerationBounds b;
        b.budget = 0.69 * std::sqrt(std::ldexp(1.0, n));
        b.alpha = alpha;
        b.max_global = static_cast<int>(std::floor(b.budget));
        b.max_blocks = max_blocks.value_or(2 * n);
        return b;
    }

    /// `standard` plus the one-stage oracle cap j_exp + 1.
    static EnumerationBounds one_stage(int n, double alpha, std::optional<int> max_blocks = std::nullopt) {
        EnumerationBounds b = standard(n, alpha, max_blocks);
        b.max_oracle_calls = grover_j_exp(n) + 1;
        return b;
    }

    int max_local_for(int globals) const {
        const double cap = std::floor((budget - globals) * (alpha + 1.0) / alpha);
        if (!(cap >= 0.0)) return 0;
        return cap > 1e6 ? 1000000 : static_cast<int>(cap);
    }

    /// Same limits with the local cap evaluated at another alpha.
    EnumerationBounds at_alpha(double a) const {
        EnumerationBounds b = *this;
        b.alpha = a;
        return b;
    }

    /// Whether a complete sequence with these counts may be scored. Empty
    /// sequences never are.
    bool scorable(int globals, int locals) const { return globals >= min_global && globals + locals > 0; }

    bool admits(int globals, int locals, int blocks, int oracle_calls) const {
        return globals <= max_global && locals <= max_local_for(globals) && blocks <= max_blocks &&
               (!max_oracle_calls || oracle_calls <= *max_oracle_calls);
    }

    /// Largest alpha at which `locals` local operators with `globals` globals stay admissible.
    double max_admissible_alpha(int globals, int locals) const {
        const double slack = budget - globals;
        if (locals == 0) return std::numeric_limits<double>::infinity();
        // floor(slack (a+1)/a) >= locals  <=>  slack (a+1)/a >= locals  <=>  a (locals - slack) <= slack
        if (slack <= 0.0) return 0.0;
        if (locals <= slack) return std::numeric_limits<double>::infinity();
        return slack / (locals - slack);
    }
};

/// Per-operator depth of one stage as exact affine forms in alpha.
struct StageCosts {
    std::int64_t global_fixed = 0;  // d(D) of the stage's global diffusion
    std::int64_t local_fixed = 0;   // d(D_m) of its local diffusion
    std::int64_t oracle_unit = 0;   // d(D_n) of the full register

    static StageCosts of(const GateDepthTable& table, int full_n, const Subspace& sub) {
        StageCosts c;
        c.global_fixed = diffusion_depth(table, sub.n);
        c.local_fixed = sub.has_blocks() ? diffusion_depth(table, sub.m) : 0;
        c.oracle_unit = diffusion_depth(table, full_n);
        return c;
    }

    double global_cost(double alpha) const { return static_cast<double>(global_fixed) + alpha * oracle_unit; }
    double local_cost(double alpha) const { return static_cast<double>(local_fixed) + alpha * oracle_unit; }
};

/// What the final measurement of a stage rewards.
enum class Objective {
    target,  // |a_t|^2
    block,   // |a_t|^2 + |a_ntt|^2
};

inline double objective_value(const ReducedState& s, Objective o) {
    return o == Objective::target ? s.target_probability() : s.block_probability();
}

/// Upper bound on the objective reachable from a state within extra depth E.
///
/// A global operator moves the line through the state by at most 2 theta
/// relative to |t> and by at most 2 gamma relative to |u>; a local operator by
/// at most 2 theta2 relative to |t> and not at all relative to |u>. Dividing
/// by the cheapest operator cost turns these into angular rates per unit of
/// depth.
class ReachBound {
 public:
    ReachBound(const Subspace& sub, double global_cost, double local_cost, Objective objective)
        : objective_(objective) {
        const Angles a = Angles::of(sub);
        rate_t_ = 2.0 * a.theta / global_cost;
        if (sub.has_blocks()) {
            rate_t_ = std::max(rate_t_, 2.0 * a.theta2 / local_cost);
            rate_w_ = 2.0 * a.gamma / global_cost;
        } else {
            rate_w_ = 0.0;
        }
        blocked_ = sub.has_blocks();
    }

    /// Precomputes the angles of `s`; call before `at`.
    void set_state(const ReducedState& s) {
        beta_ = std::acos(std::min(1.0, std::fabs(s.a_t)));
        omega_ = std::acos(std::min(1.0, std::fabs(s.a_u)));
    }

    double at(double extra_depth) const {
        double block = 1.0;
        if (blocked_) {
            const double w = omega_ + rate_w_ * extra_depth;
            block = w >= std::numbers::pi / 2 ? 1.0 : std::sin(w) * std::sin(w);
        }
        if (objective_ == Objective::block) return block;
        const double b = beta_ - rate_t_ * extra_depth;
        const double target = b <= 0.0 ? 1.0 : std::cos(b) * std::cos(b);
        return std::min(target, block);
    }

 private:
    Objective objective_;
    double rate_t_ = 0.0;
    double rate_w_ = 0.0;
    bool blocked_ = false;
    double beta_ = 0.0;
    double omega_ = 0.0;
};

/// True when some E in [lo, hi] may satisfy numerator(E) <= limit * reach(E).
/// Both functions must be non-decreasing; the test is conservative.
template <class Numerator>
bool may_satisfy(const Numerator& numerator, const ReachBound& reach, double limit, double lo, double hi,
                 int depth = 0) {
    if (lo > hi) return false;
    if (numerator(lo) > limit * reach.at(hi)) return false;
    if (depth >= 6 || numerator(lo) <= limit * reach.at(lo)) return true;
    const double mid = 0.5 * (lo + hi);
    return may_satisfy(numerator, reach, limit, lo, mid, depth + 1) ||
           may_satisfy(numerator, reach, limit, mid, hi, depth + 1);
}

/// One node of the sequence tree: a sequence and the state it produces.
struct SequenceNode {
    ReducedState state;
    int globals = 0;
    int locals = 0;
    int blocks = 0;
    std::int64_t fixed = 0;
    std::int64_t unit = 0;
    std::span<const OperatorKind> ops;

    int oracle_calls() const { return globals + locals; }
    double depth(double alpha) const { return static_cast<double>(fixed) + alpha * static_cast<double>(unit); }
};

inline SequenceSpec sequence_from_ops(int n, std::optional<int> m, std::span<const OperatorKind> ops) {
    std::vector<Block> blocks;
    for (OperatorKind k : ops) {
        if (!blocks.empty() && blocks.back().kind == k) {
            ++blocks.back().count;
        } else {
            blocks.push_back({k, 1});
        }
    }
    return SequenceSpec(n, m, std::move(blocks));
}

/// Walks every admissible sequence over `sub` in depth-first order, starting
/// from |s_n>. `visit(node)` is called once per sequence (the empty sequence
/// included) and returns whether to extend it.
template <class Visit>
void enumerate_sequences(const Subspace& sub, const StageCosts& costs, const EnumerationBounds& bounds, Visit&& visit) {
    const Generator global = global_generator(sub);
    const Generator local = sub.has_blocks() ? local_generator(sub) : Generator{Mat3::identity()};
    std::vector<OperatorKind> ops;
    ops.reserve(256);

    std::function<void(const SequenceNode&, int)> walk = [&](const SequenceNode& node, int run) {
        if (!visit(node)) return;
        for (OperatorKind k : {OperatorKind::global, OperatorKind::local}) {
            if (k == OperatorKind::local && !sub.has_blocks()) continue;
            const bool same = !ops.empty() && ops.back() == k;
            const int next_run = same ? run + 1 : 1;
            if (bounds.max_block_length && next_run > *bounds.max_block_length) continue;
            SequenceNode child;
            child.globals = node.globals + (k == OperatorKind::global);
            child.locals = node.locals + (k == OperatorKind::local);
            child.blocks = node.blocks + (same ? 0 : 1);
            if (!bounds.admits(child.globals, child.locals, child.blocks, child.oracle_calls())) continue;
            child.fixed = node.fixed + (k == OperatorKind::global ? costs.global_fixed : costs.local_fixed);
            child.unit = node.unit + costs.oracle_unit;
            child.state = (k == OperatorKind::global ? global : local).apply(node.state);
            ops.push_back(k);
            child.ops = ops;
            walk(child, next_run);
            ops.pop_back();
        }
    };

    SequenceNode root;
    root.state = initial_state(sub);
    root.ops = ops;
    walk(root, 0);
}

}  // namespace qsearch
