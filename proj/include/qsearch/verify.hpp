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

// Self-checks: golden tables, reduced model against the state vector, and
// the closed-form diagnostics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsearch/cost_model.hpp"
#include "qsearch/critical_ratio.hpp"
#include "qsearch/golden.hpp"
#include "qsearch/optimizer.hpp"
#include "qsearch/sequence.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

struct CheckResult {
    std::string group;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    int n_lo = 4;
    int n_hi = 10;
    bool golden_critical = true;
    /// Adds the n <= 14 critical-ratio scaling checks.
    bool extended = false;
    int samples = 25;  // random sequences per (n, m)
    std::uint64_t seed = 20260101;
};

/// Uniformly random admissible sequence over (n, m) with 1..max_ops operators.
template <class Rng>
SequenceSpec random_sequence(int n, int m, int max_ops, Rng& rng) {
    std::uniform_int_distribution<int> length(1, max_ops);
    std::bernoulli_distribution local(0.5);
    std::vector<Block> blocks;
    const int ops = length(rng);
    for (int i = 0; i < ops; ++i) blocks.push_back({local(rng) ? OperatorKind::local : OperatorKind::global, 1});
    return SequenceSpec(n, m, std::move(blocks));
}

/// Largest deviation of the full-state amplitudes from the three-class pattern.
inline double class_symmetry_error(const StateVector& state, const TargetSpec& target, int m) {
    const auto amps = state.amplitudes();
    const std::uint64_t block_of_target = target.index() >> m;
    double ntt = 0.0, u = 0.0;
    bool have_ntt = false, have_u = false;
    double err = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i == target.index()) continue;
        const bool same_block = (i >> m) == block_of_target;
        double& ref = same_block ? ntt : u;
        bool& have = same_block ? have_ntt : have_u;
        if (!have) {
            ref = amps[i];
            have = true;
        } else {
            err = std::max(err, std::fabs(amps[i] - ref));
        }
    }
    return err;
}

namespace detail {

inline std::string fmt(double x, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

class Checklist {
 public:
    void add(std::string group, std::string name, bool passed, std::string detail) {
        results_.push_back({std::move(group), std::move(name), passed, std::move(detail)});
    }
    std::vector<CheckResult> take() { return std::move(results_); }

 private:
    std::vector<CheckResult> results_;
};

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline void golden_tables(const GateDepthTable& table, const VerifyOptions& opts, Checklist& out) {
    const int lo = std::max(4, opts.n_lo);
    const int hi = std::min(10, opts.n_hi);
    for (const auto& row : golden::kGrover) {
        if (row.n < lo || row.n > hi) continue;
        const OptResult r = optimize_grover(row.n, DepthParams(1.0, table, row.n));
        const bool ok = format_paper_notation(r.sequence) == row.sequence &&
                        near(r.probability, row.probability, golden::kProbabilityTolerance) &&
                        r.single_run_depth == row.depth && near(r.expected_depth, row.med, golden::kMedTolerance);
        out.add("golden", "table1 n=" + std::to_string(row.n), ok,
                format_paper_notation(r.sequence) + " depth " + fmt(r.single_run_depth) + " MED " +
                    fmt(r.expected_depth, 8) + " (want " + std::string(row.sequence) + " " +
                    std::to_string(row.depth) + " " + fmt(row.med, 8) + ")");
    }
    for (const auto& row : golden::kOneStage) {
        if (row.n < lo || row.n > hi) continue;
        const OptResult r = optimize_one_stage(row.n, DepthParams(1.0, table, row.n),
                                               EnumerationBounds::one_stage(row.n, 1.0));
        const bool ok = format_paper_notation(r.sequence) == row.sequence &&
                        near(r.probability, row.probability, golden::kProbabilityTolerance) &&
                        r.single_run_depth == row.depth && near(r.expected_depth, row.med, golden::kMedTolerance);
        out.add("golden", "table2 n=" + std::to_string(row.n), ok,
                format_paper_notation(r.sequence) + " depth " + fmt(r.single_run_depth) + " MED " +
                    fmt(r.expected_depth, 8) + " (want " + std::string(row.sequence) + " " +
                    std::to_string(row.depth) + " " + fmt(row.med, 8) + ")");
    }
    for (const auto& row : golden::kTwoStage) {
        if (row.n < lo || row.n > hi) continue;
        const OptResult r = optimize_two_stage(row.n, DepthParams(1.0, table, row.n),
                                               EnumerationBounds::standard(row.n, 1.0));
        const std::string s1 = format_paper_notation(r.sequence);
        const std::string s2 = r.plan ? format_paper_notation(r.plan->stage2()) : "-";
        const bool ok = s1 == row.stage1 && s2 == row.stage2 &&
                        near(r.stage1_probability, row.stage1_probability, golden::kProbabilityTolerance) &&
                        near(r.stage2_probability, row.stage2_probability, golden::kProbabilityTolerance) &&
                        r.stage1_depth.total_depth == row.stage1_depth &&
                        r.stage2_depth.total_depth == row.stage2_depth &&
                        near(r.expected_depth, row.med, row.med_tolerance);
        out.add("golden", "table3 n=" + std::to_string(row.n), ok,
                s1 + " + " + s2 + " MED " + fmt(r.expected_depth, 8) + " (want " + std::string(row.stage1) + " + " +
                    std::string(row.stage2) + " " + fmt(row.med, 8) + ")");
    }
    if (!opts.golden_critical) return;
    for (const auto& row : golden::kCritical) {
        if (row.n < lo || row.n > hi) continue;
        const CriticalResult c1 = critical_alpha(row.n, CriticalMode::one_stage, table);
        out.add("golden", "table4 alpha_c1 n=" + std::to_string(row.n),
                c1.alpha_c && near(*c1.alpha_c, row.alpha_c1, golden::kCriticalTolerance),
                (c1.alpha_c ? fmt(*c1.alpha_c) : std::string("NA")) + " (want " + fmt(row.alpha_c1) + ")");
        const CriticalResult c2 = critical_alpha(row.n, CriticalMode::two_stage, table);
        const bool ok2 = row.alpha_c2 ? c2.alpha_c && near(*c2.alpha_c, *row.alpha_c2, golden::kCriticalTolerance)
                                      : !c2.alpha_c;
        out.add("golden", "table4 alpha_c2 n=" + std::to_string(row.n), ok2,
                (c2.alpha_c ? fmt(*c2.alpha_c) : std::string("NA")) + " (want " +
                    (row.alpha_c2 ? fmt(*row.alpha_c2) : std::string("NA")) + ")");
    }
}

inline void oracle_equivalence(const VerifyOptions& opts, Checklist& out) {
    std::mt19937_64 rng(opts.seed);
    for (int n = std::max(3, opts.n_lo); n <= std::min(10, opts.n_hi); ++n) {
        double worst_p = 0.0, worst_block = 0.0, worst_sym = 0.0;
        std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
        for (int m = 2; m < n; ++m) {
            for (int k = 0; k < opts.samples; ++k) {
                const SequenceSpec seq = random_sequence(n, m, 20, rng);
                const TargetSpec target(n, pick(rng));
                const StateVector full = run_sequence_full(seq, target);
                const ReducedState reduced = run_reduced(seq, m);
                worst_p = std::max(worst_p, std::fabs(reduced.target_probability() - target_probability(full, target)));
                worst_block =
                    std::max(worst_block, std::fabs(reduced.block_probability() - block_marginal(full, target, m)));
                worst_sym = std::max(worst_sym, class_symmetry_error(full, target, m));
            }
        }
        out.add("oracle", "reduced vs state vector n=" + std::to_string(n),
                worst_p <= 1e-10 && worst_block <= 1e-10 && worst_sym <= 1e-12,
                "max |dp| " + fmt(worst_p) + ", max |dblock| " + fmt(worst_block) + ", symmetry " + fmt(worst_sym));
    }
    for (int n = 2; n <= 12; ++n) {
        double worst = 0.0;
        for (int j = 0; j <= grover_j_max(n); ++j) {
            const double exact = success_probability(SequenceSpec::grover(n, j));
            worst = std::max(worst, std::fabs(exact - grover_probability_closed_form(n, j)));
        }
        out.add("oracle", "closed-form Grover n=" + std::to_string(n), worst <= 1e-10, "max error " + fmt(worst));
    }
}

inline void theorem_checks(Checklist& out) {
    constexpr double tol = 1e-10;
    for (int n = 4; n <= 14; ++n) {
        const TheoremDiagnostics d = sandwich_matrix(n);
        const double eig = std::max({std::abs(d.lambda0 + 1.0), std::fabs(std::abs(d.lambda_plus) - 1.0),
                                     std::fabs(std::abs(d.lambda_minus) - 1.0)});
        const bool ok = d.product_error <= tol && eig <= tol && d.eigen_residual <= tol &&
                        d.reconstruction_error <= tol && d.t_overlap_v0 <= tol &&
                        std::fabs(d.t_overlap_plus_sq - 0.5) <= tol && std::fabs(d.t_overlap_minus_sq - 0.5) <= tol &&
                        std::fabs(d.trace_angle - d.rotation_angle) <= tol;
        out.add("theorem", "sandwich eigenstructure n=" + std::to_string(n), ok,
                "product " + fmt(d.product_error) + ", residual " + fmt(d.eigen_residual) + ", <t|v0> " +
                    fmt(d.t_overlap_v0) + ", |<t|v+>|^2 " + fmt(d.t_overlap_plus_sq, 12));
        const double e2 = theorem2_matrix_error(n);
        out.add("theorem", "two-stage product matrix n=" + std::to_string(n), e2 <= tol, "max error " + fmt(e2));
    }
    std::vector<double> xs, g1, g2;
    for (int n = 8; n <= 14; ++n) {
        xs.push_back(n);
        g1.push_back(theorem1_max_gap(n));
        g2.push_back(theorem2_max_gap(n));
    }
    const double target = -0.5 * std::numbers::ln2;
    const double s1 = log_slope(xs, g1);
    const double s2 = log_slope(xs, g2);
    out.add("theorem", "sandwich asymptotic gap slope", std::fabs(s1 - target) <= 0.2 * std::fabs(target),
            "slope " + fmt(s1) + " vs " + fmt(target));
    out.add("theorem", "two-stage asymptotic gap slope", std::fabs(s2 - target) <= 0.2 * std::fabs(target),
            "slope " + fmt(s2) + " vs " + fmt(target));
}

/// Scaled alpha_c1 n 2^{-n/2} may vary by at most this factor over n in [6, 14].
inline constexpr double kGrowthBandRatio = 10.0;

inline void extended_checks(const GateDepthTable& table, Checklist& out) {
    const GateDepthTable wide = table.with_linear_tail(14);
    double previous = 0.0;
    bool monotone = true;
    double last = 0.0;
    std::string trail;
    for (int n = 5; n <= 14; ++n) {
        const CriticalResult c = critical_alpha(n, CriticalMode::two_stage, wide);
        const double a = c.alpha_c.value_or(0.0);
        monotone = monotone && a > previous && a < 1.0 + std::numbers::sqrt3;
        previous = last = a;
        trail += (trail.empty() ? "" : " ") + fmt(a, 5);
    }
    out.add("scaling", "alpha_c2 increasing below 1+sqrt3 for n=5..14", monotone, trail);
    out.add("scaling", "alpha_c2(14) > 2.4", last > 2.4, fmt(last));

    double lo = 1e300, hi = 0.0;
    bool witness = true;
    std::string scaled;
    for (int n = 6; n <= 14; ++n) {
        const CriticalResult c = critical_alpha(n, CriticalMode::one_stage, wide);
        const double a = c.alpha_c.value_or(0.0);
        const double s = a * n * std::pow(2.0, -0.5 * n);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        scaled += (scaled.empty() ? "" : " ") + fmt(s, 4);
        const double sandwich = sandwich_critical_alpha(n, wide);
        witness = witness && sandwich > 1.0 && sandwich <= a + 1e-9;
    }
    out.add("scaling", "alpha_c1 n 2^{-n/2} within a bounded band for n=6..14", lo > 0.0 && hi / lo <= kGrowthBandRatio,
            scaled);
    out.add("scaling", "sandwich schedule beats Grover below alpha_c1 for n=6..14", witness, "");
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const GateDepthTable& table, const VerifyOptions& opts = {}) {
    if (opts.n_lo > opts.n_hi) throw std::invalid_argument("empty verification range");
    detail::Checklist out;
    try {
        detail::golden_tables(table, opts, out);
    } catch (const std::exception& e) {
        out.add("golden", "tables", false, e.what());
    }
    detail::oracle_equivalence(opts, out);
    detail::theorem_checks(out);
    if (opts.extended) {
        try {
            detail::extended_checks(table, out);
        } catch (const std::exception& e) {
            out.add("scaling", "extended", false, e.what());
        }
    }
    return out.take();
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace qsearch
