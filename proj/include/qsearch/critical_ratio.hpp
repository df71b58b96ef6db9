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

// Critical oracle-to-diffusion ratios and checks of the two constructions
// behind their asymptotics.
//
//   alpha_c = max { alpha >= alpha_floor : d_k(alpha) < d_G(alpha) }
//
// found by doubling then bisection on the predicate. Up to
// `exhaustive_max_n` the predicate runs the exact branch and bound with an
// early exit. Beyond it, the search is restricted to a cached family of
// periodic schedules prefix . motif^r . suffix, so the result is a lower
// bound on the exact ratio.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsearch/cost_model.hpp"
#include "qsearch/enumerate.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/optimizer.hpp"
#include "qsearch/sequence.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

enum class CriticalMode { one_stage, two_stage };

inline std::string to_string(CriticalMode m) { return m == CriticalMode::one_stage ? "one-stage" : "two-stage"; }

enum class SearchMethod {
    automatic,   // exhaustive up to exhaustive_max_n, structured above
    exhaustive,  // exact branch and bound
    structured,  // periodic family only
};

inline std::string to_string(SearchMethod m) {
    switch (m) {
        case SearchMethod::automatic: return "automatic";
        case SearchMethod::exhaustive: return "exhaustive";
        case SearchMethod::structured: return "structured";
    }
    return "?";
}

struct CriticalOptions {
    double tol = 1e-3;
    /// Smallest alpha probed. An oracle is at least as deep as a diffusion.
    double alpha_floor = 1.0;
    double alpha_ceiling = 1e6;
    int max_iterations = 200;
    /// Block cap for critical searches; unset leaves the count unbounded since
    /// the alternating constructions need about one block per oracle call.
    std::optional<int> max_blocks;
    SearchMethod method = SearchMethod::automatic;
    int exhaustive_max_n = 10;
    /// Re-optimize at the final alpha so the witness is the MED schedule there.
    bool optimal_witness = true;
    /// Minimum global operators per stage. Zero admits guess-then-local-search
    /// schedules such as S_{4,3}(1).
    int min_global = 0;
    /// Two-stage split; the default two-qubit second stage mirrors the
    /// construction behind the large-N limit. Unset searches every m2.
    std::optional<int> two_stage_m2 = 2;
};

struct CriticalResult {
    int n = 0;
    CriticalMode mode = CriticalMode::one_stage;
    SearchMethod method = SearchMethod::exhaustive;
    std::optional<double> alpha_c;
    /// Best schedule found at alpha_c (absent with alpha_c).
    std::optional<OptResult> witness;
    /// d_G at alpha_c, for comparison with the witness.
    double grover_med = 0.0;
    double tolerance = 0.0;
    /// The predicate holds at bracket_lo and fails at bracket_hi.
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int evaluations = 0;

    bool present() const { return alpha_c.has_value(); }
};

namespace detail {

using Word = std::vector<OperatorKind>;

/// All words of length [lo, hi] over {G, L}; with `mixed`, only words using both.
inline std::vector<Word> words(int lo, int hi, bool mixed) {
    std::vector<Word> out;
    for (int len = lo; len <= hi; ++len) {
        for (int bits = 0; bits < (1 << len); ++bits) {
            Word w;
            for (int i = 0; i < len; ++i) w.push_back(((bits >> i) & 1) ? OperatorKind::local : OperatorKind::global);
            const bool has_g = std::find(w.begin(), w.end(), OperatorKind::global) != w.end();
            const bool has_l = std::find(w.begin(), w.end(), OperatorKind::local) != w.end();
            if (!mixed || (has_g && has_l)) out.push_back(std::move(w));
        }
    }
    return out;
}

inline int count_kind(const Word& w, OperatorKind k) { return static_cast<int>(std::count(w.begin(), w.end(), k)); }

inline int internal_breaks(const Word& w) {
    int b = 0;
    for (std::size_t i = 1; i < w.size(); ++i) b += w[i] != w[i - 1];
    return b;
}

/// A member of the periodic family, stored by construction indices.
struct FamilyMember {
    int m = 0;
    int prefix = 0;
    int motif = 0;
    int repeats = 0;
    int suffix = 0;
    int globals = 0;
    int locals = 0;
    int blocks = 0;
    std::int64_t fixed = 0;
    std::int64_t unit = 0;
    double probability = 0.0;

    double depth(double alpha) const { return static_cast<double>(fixed) + alpha * static_cast<double>(unit); }
};

/// Cached periodic schedules prefix . motif^r . suffix over (n, m) for m in a
/// range, scored by target or block probability. Members that cannot beat
/// `grover_unit` (d_G / (alpha + 1)) anywhere in [alpha_floor, inf) are dropped.
class PeriodicFamily {
 public:
    static constexpr int kMaxMotif = 4;
    static constexpr int kMaxAffix = 2;

    PeriodicFamily(int n, int m_lo, int m_hi, Objective objective, const GateDepthTable& table,
                   const EnumerationBounds& loosest, double grover_unit, double alpha_floor)
        : n_(n), objective_(objective) {
        motifs_ = words(2, kMaxMotif, true);
        affixes_ = words(0, kMaxAffix, false);
        for (int m = m_lo; m <= m_hi; ++m) build(m, table, loosest, grover_unit, alpha_floor);
    }

    const std::vector<FamilyMember>& members() const { return members_; }

    SequenceSpec sequence(const FamilyMember& f) const {
        Word ops = affixes_[f.prefix];
        for (int r = 0; r < f.repeats; ++r) ops.insert(ops.end(), motifs_[f.motif].begin(), motifs_[f.motif].end());
        ops.insert(ops.end(), affixes_[f.suffix].begin(), affixes_[f.suffix].end());
        return sequence_from_ops(n_, f.locals ? std::optional<int>(f.m) : std::nullopt, ops);
    }

 private:
    void build(int m, const GateDepthTable& table, const EnumerationBounds& loosest, double grover_unit,
               double alpha_floor) {
        const Subspace sub = Subspace::blocked(n_, m);
        const StageCosts costs = StageCosts::of(table, n_, sub);
        const Generator g = global_generator(sub);
        const Generator l = local_generator(sub);
        auto apply = [&](const Word& w, ReducedState s) {
            for (OperatorKind k : w) s = (k == OperatorKind::global ? g : l).apply(s);
            return s;
        };
        auto word_matrix = [&](const Word& w) {
            Mat3 mat = Mat3::identity();
            for (OperatorKind k : w) mat = (k == OperatorKind::global ? g : l).matrix * mat;
            return mat;
        };
        auto junction = [](const Word& a, const Word& b) {
            return !a.empty() && !b.empty() && a.back() != b.front() ? 1 : 0;
        };
        const ReducedState start = initial_state(sub);
        for (std::size_t pi = 0; pi < affixes_.size(); ++pi) {
            const Word& pre = affixes_[pi];
            const ReducedState after_prefix = apply(pre, start);
            for (std::size_t mi = 0; mi < motifs_.size(); ++mi) {
                const Word& motif = motifs_[mi];
                const Mat3 motif_mat = word_matrix(motif);
                const int mg = count_kind(motif, OperatorKind::global);
                const int ml = count_kind(motif, OperatorKind::local);
                ReducedState s = after_prefix;
                for (int r = 1;; ++r) {
                    s = ReducedState::from(motif_mat * s.vec());
                    const int base_g = count_kind(pre, OperatorKind::global) + r * mg;
                    const int base_l = count_kind(pre, OperatorKind::local) + r * ml;
                    if (!loosest.admits(base_g, base_l, 1, base_g + base_l)) break;
                    for (std::size_t si = 0; si < affixes_.size(); ++si) {
                        const Word& suf = affixes_[si];
                        FamilyMember f;
                        f.m = m;
                        f.prefix = static_cast<int>(pi);
                        f.motif = static_cast<int>(mi);
                        f.repeats = r;
                        f.suffix = static_cast<int>(si);
                        f.globals = base_g + count_kind(suf, OperatorKind::global);
                        f.locals = base_l + count_kind(suf, OperatorKind::local);
                        f.blocks = 1 + internal_breaks(pre) + junction(pre, motif) + r * internal_breaks(motif) +
                                   (r - 1) * junction(motif, motif) + junction(motif, suf) + internal_breaks(suf);
                        if (!loosest.admits(f.globals, f.locals, f.blocks, f.globals + f.locals)) continue;
                        if (!loosest.scorable(f.globals, f.locals)) continue;
                        const ReducedState fin = apply(suf, s);
                        f.probability = objective_value(fin, objective_);
                        if (!(f.probability > 0.0)) continue;
                        f.fixed = f.globals * costs.global_fixed + f.locals * costs.local_fixed;
                        f.unit = static_cast<std::int64_t>(f.globals + f.locals) * costs.oracle_unit;
                        // (A + B a) / (P (a + 1) c) is monotone in a: test both ends.
                        const double c = grover_unit * f.probability;
                        const bool at_floor = f.depth(alpha_floor) < c * (alpha_floor + 1.0);
                        const bool at_infinity = static_cast<double>(f.unit) < c;
                        if (at_floor || at_infinity) members_.push_back(f);
                    }
                }
            }
        }
    }

    int n_;
    Objective objective_;
    std::vector<Word> motifs_;
    std::vector<Word> affixes_;
    std::vector<FamilyMember> members_;
};

struct Probe {
    bool holds = false;
    std::optional<OptResult> witness;
    double grover_med = 0.0;
};

/// Stage-2 widths tried by the structured two-stage family.
inline constexpr int kStructuredMaxM2 = 8;

class CriticalPredicate {
 public:
    CriticalPredicate(int n, CriticalMode mode, const GateDepthTable& table, const CriticalOptions& opts,
                      SearchMethod method)
        : n_(n), mode_(mode), table_(table), opts_(opts), method_(method) {
        if (method_ == SearchMethod::structured) build_family();
    }

    Probe operator()(double alpha, bool first_only) const {
        Probe probe;
        const DepthParams params(alpha, table_, n_);
        probe.grover_med = optimize_grover(n_, params).expected_depth;
        if (method_ == SearchMethod::exhaustive) {
            SearchOptions so;
            so.beat = probe.grover_med;
            so.first_only = first_only;
            so.fixed_m2 = opts_.two_stage_m2;
            if (mode_ == CriticalMode::two_stage && opts_.two_stage_m2) {
                so.stage2_bounds = stage2_bounds(*opts_.two_stage_m2, alpha);
            }
            try {
                probe.witness = mode_ == CriticalMode::one_stage
                                    ? optimize_one_stage(n_, params, bounds(alpha), so)
                                    : optimize_two_stage(n_, params, bounds(alpha), so);
                probe.holds = true;
            } catch (const InfeasibleError&) {
            }
            return probe;
        }
        return mode_ == CriticalMode::one_stage ? structured_one_stage(params, probe)
                                                : structured_two_stage(params, probe);
    }

    EnumerationBounds bounds(double alpha) const {
        const int blocks = opts_.max_blocks.value_or(std::numeric_limits<int>::max());
        EnumerationBounds b = mode_ == CriticalMode::one_stage ? EnumerationBounds::one_stage(n_, alpha, blocks)
                                                               : EnumerationBounds::standard(n_, alpha, blocks);
        b.min_global = opts_.min_global;
        return b;
    }

    EnumerationBounds stage2_bounds(int m2, double alpha) const {
        EnumerationBounds b = EnumerationBounds::standard(m2, alpha);
        b.max_blocks = std::min(b.max_blocks, bounds(alpha).max_blocks);
        b.min_global = opts_.min_global;
        return b;
    }

    int m2_lo() const { return opts_.two_stage_m2.value_or(2); }
    int m2_hi() const { return opts_.two_stage_m2.value_or(std::min(n_ - 1, method_ == SearchMethod::structured ? kStructuredMaxM2 : n_ - 1)); }

 private:
    void build_family() {
        const double grover_unit =
            optimize_grover(n_, DepthParams(1.0, table_, n_)).expected_depth / 2.0;  // d_G(1) / (1 + 1)
        const EnumerationBounds loosest = bounds(opts_.alpha_floor);
        if (mode_ == CriticalMode::one_stage) {
            family_.emplace(n_, 2, n_ - 1, Objective::target, table_, loosest, grover_unit, opts_.alpha_floor);
        } else {
            family_.emplace(n_, m2_lo(), m2_hi(), Objective::block, table_, loosest, grover_unit, opts_.alpha_floor);
        }
    }

    bool admissible(const FamilyMember& f, const EnumerationBounds& b) const {
        return b.admits(f.globals, f.locals, f.blocks, f.globals + f.locals);
    }

    Probe structured_one_stage(const DepthParams& params, Probe probe) const {
        const EnumerationBounds b = bounds(params.alpha);
        const FamilyMember* best = nullptr;
        double best_med = probe.grover_med;
        for (const FamilyMember& f : family_->members()) {
            if (!admissible(f, b)) continue;
            const double med = f.depth(params.alpha) / f.probability;
            if (med < best_med && !within_tie(med, probe.grover_med)) {
                best_med = med;
                best = &f;
            }
        }
        if (best) {
            probe.holds = true;
            probe.witness = evaluate_sequence(family_->sequence(*best), params);
            probe.witness->kind = MedKind::one_stage;
        }
        return probe;
    }

    Probe structured_two_stage(const DepthParams& params, Probe probe) const {
        const double alpha = params.alpha;
        const EnumerationBounds b = bounds(alpha);
        double best_med = probe.grover_med;
        for (int m2 = m2_lo(); m2 <= m2_hi(); ++m2) {
            long long nodes = 0;
            const auto front = stage_two_front(n_, m2, params, stage2_bounds(m2, alpha), probe.grover_med, nodes);
            if (front.empty()) continue;
            for (const FamilyMember& f : family_->members()) {
                if (f.m != m2 || !admissible(f, b)) continue;
                const double d1 = f.depth(alpha);
                for (const auto& o : front) {
                    const double med = (d1 + o.depth) / (f.probability * o.probability);
                    if (med < best_med && !within_tie(med, probe.grover_med)) {
                        best_med = med;
                        probe.witness = evaluate_plan(TwoStagePlan(n_, m2, family_->sequence(f), o.sequence), params);
                    }
                }
            }
        }
        probe.holds = probe.witness.has_value();
        return probe;
    }

    int n_;
    CriticalMode mode_;
    GateDepthTable table_;
    CriticalOptions opts_;
    SearchMethod method_;
    std::optional<PeriodicFamily> family_;
};

}  // namespace detail

/// Largest alpha (to within `opts.tol`) at which the one- or two-stage MED is
/// strictly below Grover's. ABSENT when the predicate already fails at
/// `opts.alpha_floor`. Throws ConvergenceError if the predicate still holds at
/// `opts.alpha_ceiling` or bisection exceeds the iteration cap.
inline CriticalResult critical_alpha(int n, CriticalMode mode, const GateDepthTable& table,
                                     const CriticalOptions& opts = {}) {
    if (n < 3 || (mode == CriticalMode::two_stage && n < 4)) {
        throw std::invalid_argument("critical ratio needs n >= 3 (one-stage) or n >= 4 (two-stage)");
    }
    if (!(opts.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!(opts.alpha_floor > 0.0) || !(opts.alpha_ceiling > opts.alpha_floor)) {
        throw std::invalid_argument("need 0 < alpha_floor < alpha_ceiling");
    }
    DepthParams(opts.alpha_floor, table, n).validate();

    CriticalResult r;
    r.n = n;
    r.mode = mode;
    r.tolerance = opts.tol;
    r.method = opts.method;
    if (r.method == SearchMethod::automatic) {
        r.method = n <= opts.exhaustive_max_n ? SearchMethod::exhaustive : SearchMethod::structured;
    }
    const detail::CriticalPredicate predicate(n, mode, table, opts, r.method);
    auto probe = [&](double alpha) {
        ++r.evaluations;
        return predicate(alpha, true);
    };

    double lo = opts.alpha_floor;
    detail::Probe at_lo = probe(lo);
    if (!at_lo.holds) {
        r.bracket_lo = 0.0;
        r.bracket_hi = lo;
        return r;
    }
    double hi = 2.0 * lo;
    for (;;) {
        detail::Probe p = probe(hi);
        if (!p.holds) break;
        lo = hi;
        at_lo = std::move(p);
        hi *= 2.0;
        if (hi > opts.alpha_ceiling) {
            throw ConvergenceError("predicate still holds at alpha=" + std::to_string(lo) + "; no critical ratio");
        }
    }
    for (int it = 0; hi - lo > opts.tol; ++it) {
        if (it >= opts.max_iterations) throw ConvergenceError("bisection exceeded the iteration cap");
        const double mid = 0.5 * (lo + hi);
        detail::Probe p = probe(mid);
        if (p.holds) {
            lo = mid;
            at_lo = std::move(p);
        } else {
            hi = mid;
        }
    }
    if (opts.optimal_witness) {
        ++r.evaluations;
        detail::Probe best = predicate(lo, false);
        if (best.holds) at_lo = std::move(best);
    }
    r.alpha_c = lo;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.witness = at_lo.witness;
    r.grover_med = at_lo.grover_med;
    return r;
}

// ---------------------------------------------------------------------------
// Theorem diagnostics

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;

/// Eigen-structure of the sandwich G_{n-1} G_n G_{n-1} on (n, n-1).
///
/// With C = cos 3 theta2 and S = sin 3 theta2 (sin theta2 = sqrt(2 / N)):
///
///   [  C^2   C S   S ]
///   [ -C S  -S^2   C ]
///   [ -S     C     0 ]
///
/// eigenvalues -1 and exp(+-i g), tan g = D / (1 + cos 6 theta2),
/// D = sqrt(3 - 2 cos 6 theta2 - cos^2 6 theta2); eigenvectors
/// v0 ~ (0, 1, -C) and v+- ~ (-+i sqrt((3 + cos 6 theta2) / 2), C, 1).
struct TheoremDiagnostics {
    int n = 0;
    double theta2 = 0.0;
    Mat3 matrix;                    // closed form above
    double product_error = 0.0;     // max |closed form - generator product|
    Complex lambda0;
    Complex lambda_plus;
    Complex lambda_minus;
    double rotation_angle = 0.0;    // g
    double trace_angle = 0.0;       // acos((tr + 1) / 2), independent check of g
    CVec3 v0{};
    CVec3 v_plus{};
    CVec3 v_minus{};
    double eigen_residual = 0.0;    // max |M v - lambda v| over the three pairs
    double reconstruction_error = 0.0;  // max |V diag(lambda) V^-1 - M|
    double t_overlap_v0 = 0.0;          // |<t|v0>|
    double t_overlap_plus_sq = 0.0;     // |<t|v+>|^2
    double t_overlap_minus_sq = 0.0;    // |<t|v->|^2
    /// P_n(3 j) - P(S^j) at the sandwich peak j within the Grover budget.
    double delta_gap = 0.0;
    int peak_repeats = 0;
};

namespace detail {

inline CVec3 normalized(CVec3 v) {
    double norm = 0.0;
    for (const Complex& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (Complex& x : v) x /= norm;
    return v;
}

using CMat3 = std::array<std::array<Complex, 3>, 3>;

inline CMat3 inverse(const CMat3& a) {
    const Complex det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                        a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                        a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    CMat3 inv{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            inv[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
        }
    }
    return inv;
}

inline Subspace sandwich_subspace(int n) { return Subspace::blocked(n, n - 1); }

inline Mat3 sandwich_product(int n) {
    const Subspace sub = sandwich_subspace(n);
    const Mat3 l = local_generator(sub).matrix;
    return l * global_generator(sub).matrix * l;
}

}  // namespace detail

inline TheoremDiagnostics sandwich_matrix(int n) {
    if (n < 3) throw std::invalid_argument("sandwich sequence needs n >= 3");
    TheoremDiagnostics d;
    d.n = n;
    d.theta2 = std::asin(std::sqrt(std::ldexp(2.0, -n)));
    const double c3 = std::cos(3.0 * d.theta2);
    const double s3 = std::sin(3.0 * d.theta2);
    const double c6 = std::cos(6.0 * d.theta2);
    d.matrix = Mat3{{{{c3 * c3, c3 * s3, s3}, {-c3 * s3, -s3 * s3, c3}, {-s3, c3, 0.0}}}};
    d.product_error = (d.matrix - detail::sandwich_product(n)).max_abs();

    const double delta = std::sqrt(std::max(0.0, 3.0 - 2.0 * c6 - c6 * c6));
    d.rotation_angle = std::atan2(delta, 1.0 + c6);
    const double trace = d.matrix(0, 0) + d.matrix(1, 1) + d.matrix(2, 2);
    d.trace_angle = std::acos(std::clamp((trace + 1.0) / 2.0, -1.0, 1.0));
    d.lambda0 = -1.0;
    d.lambda_plus = std::polar(1.0, d.rotation_angle);
    d.lambda_minus = std::polar(1.0, -d.rotation_angle);

    const Complex i(0.0, 1.0);
    const double lead = std::sqrt((3.0 + c6) / 2.0);
    d.v0 = detail::normalized({0.0, 1.0, -c3});
    d.v_plus = detail::normalized({-i * lead, c3, 1.0});
    d.v_minus = detail::normalized({i * lead, c3, 1.0});

    const std::array<std::pair<Complex, CVec3>, 3> pairs{
        {{d.lambda0, d.v0}, {d.lambda_plus, d.v_plus}, {d.lambda_minus, d.v_minus}}};
    for (const auto& [lambda, v] : pairs) {
        for (int r = 0; r < 3; ++r) {
            Complex mv = 0.0;
            for (int c = 0; c < 3; ++c) mv += d.matrix(r, c) * v[c];
            d.eigen_residual = std::max(d.eigen_residual, std::abs(mv - lambda * v[r]));
        }
    }
    detail::CMat3 vmat{};
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 3; ++k) vmat[r][k] = pairs[k].second[r];
    }
    const detail::CMat3 vinv = detail::inverse(vmat);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            Complex x = 0.0;
            for (int k = 0; k < 3; ++k) x += vmat[r][k] * pairs[k].first * vinv[k][c];
            d.reconstruction_error = std::max(d.reconstruction_error, std::abs(x - d.matrix(r, c)));
        }
    }
    d.t_overlap_v0 = std::abs(d.v0[0]);
    d.t_overlap_plus_sq = std::norm(d.v_plus[0]);
    d.t_overlap_minus_sq = std::norm(d.v_minus[0]);

    // delta: Grover with the same oracle count against the sandwich at its peak.
    const Subspace sub = detail::sandwich_subspace(n);
    const Generator step{d.matrix};
    ReducedState s = initial_state(sub);
    double peak = -1.0;
    for (int j = 1; 3 * j <= std::max(3, grover_j_max(n)); ++j) {
        s = step.apply(s);
        if (s.target_probability() > peak) {
            peak = s.target_probability();
            d.peak_repeats = j;
        }
    }
    d.delta_gap = grover_probability_closed_form(n, 3 * d.peak_repeats) - peak;
    return d;
}

struct ProbabilityCheck {
    double exact = 0.0;
    double asymptotic = 0.0;

    double gap() const { return std::fabs(exact - asymptotic); }
};

/// |<t| S_{n,n-1}(1,1,1)^j |s_n>|^2 against sin^2(3 sqrt(2) j theta2).
inline ProbabilityCheck theorem1_probability_check(int n, int repeats) {
    if (n < 3) throw std::invalid_argument("sandwich sequence needs n >= 3");
    if (repeats < 0) throw std::invalid_argument("negative repeat count");
    const Subspace sub = detail::sandwich_subspace(n);
    const ReducedState s = Generator{detail::sandwich_product(n)}.pow(repeats).apply(initial_state(sub));
    const double theta2 = std::asin(std::sqrt(std::ldexp(2.0, -n)));
    const double a = std::sin(3.0 * std::numbers::sqrt2 * repeats * theta2);
    return {s.target_probability(), a * a};
}

/// Closed form of S_{n,2}(1,1) = G_n G_2 with sin g = 2 / sqrt(N):
///
///   1/2 [  cos 2g       sqrt3   sin 2g       ]
///       [  sqrt3 cos 2g  -1     sqrt3 sin 2g ]
///       [ -2 sin 2g       0     2 cos 2g     ]
inline Mat3 theorem2_matrix(int n) {
    if (n < 3) throw std::invalid_argument("two-qubit blocks need n >= 3");
    const double g = std::asin(2.0 / std::sqrt(std::ldexp(1.0, n)));
    const double c = std::cos(2.0 * g);
    const double s = std::sin(2.0 * g);
    const double r3 = std::numbers::sqrt3;
    return Mat3{{{{0.5 * c, 0.5 * r3, 0.5 * s}, {0.5 * r3 * c, -0.5, 0.5 * r3 * s}, {-s, 0.0, c}}}};
}

inline double theorem2_matrix_error(int n) {
    const Subspace sub = Subspace::blocked(n, 2);
    return (theorem2_matrix(n) - global_generator(sub).matrix * local_generator(sub).matrix).max_abs();
}

/// Block probability 1 - |<u| S_{n,2}(1,1)^j |s_n>|^2 against sin^2(sqrt(3) j g).
inline ProbabilityCheck theorem2_probability_check(int n, int repeats) {
    if (n < 3) throw std::invalid_argument("two-qubit blocks need n >= 3");
    if (repeats < 0) throw std::invalid_argument("negative repeat count");
    const ReducedState s = Generator{theorem2_matrix(n)}.pow(repeats).apply(initial_state(n, 2));
    const double g = std::asin(2.0 / std::sqrt(std::ldexp(1.0, n)));
    const double a = std::sin(std::numbers::sqrt3 * repeats * g);
    return {1.0 - s.a_u * s.a_u, a * a};
}

/// Largest gap between the exact and asymptotic sandwich-repeat probability, 3 j <= j_max.
inline double theorem1_max_gap(int n) {
    double gap = 0.0;
    for (int j = 0; 3 * j <= grover_j_max(n); ++j) gap = std::max(gap, theorem1_probability_check(n, j).gap());
    return gap;
}

/// Same gap for the product sequence, over repeats up to the first asymptotic peak.
inline double theorem2_max_gap(int n) {
    const double g = std::asin(2.0 / std::sqrt(std::ldexp(1.0, n)));
    double gap = 0.0;
    for (int j = 0; std::numbers::sqrt3 * j * g <= std::numbers::pi / 2; ++j) {
        gap = std::max(gap, theorem2_probability_check(n, j).gap());
    }
    return gap;
}

/// Least-squares slope of log(values) against xs.
inline double log_slope(const std::vector<double>& xs, const std::vector<double>& values) {
    if (xs.size() != values.size() || xs.size() < 2) throw std::invalid_argument("need two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += std::log(values[i]);
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (std::log(values[i]) - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

/// Largest alpha at which S_{n,n-1}(1,1,1)^j (some j, 3 j <= j_max + 3) alone
/// beats Grover; 0 when it never does. No enumeration bounds apply.
inline double sandwich_critical_alpha(int n, const GateDepthTable& table) {
    const Subspace sub = detail::sandwich_subspace(n);
    const double grover_unit = optimize_grover(n, DepthParams(1.0, table, n)).expected_depth / 2.0;
    const double dn = diffusion_depth(table, n);
    const double dm = diffusion_depth(table, n - 1);
    const Generator step{detail::sandwich_product(n)};
    ReducedState s = initial_state(sub);
    double best = 0.0;
    for (int j = 1; 3 * j <= grover_j_max(n) + 3; ++j) {
        s = step.apply(s);
        const double p = s.target_probability();
        const double fixed = j * (dn + 2.0 * dm);
        const double unit = 3.0 * j * dn;
        // fixed + a unit < grover_unit p (a + 1)  <=>  a (unit - c) < c - fixed
        const double c = grover_unit * p;
        if (unit > c) best = std::max(best, (c - fixed) / (unit - c));
    }
    return best;
}

}  // namespace qsearch
