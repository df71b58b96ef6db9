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

// Exact evolution in the three-dimensional invariant subspace spanned by
//
//   |t>    the target,
//   |ntt>  the normalized sum of the other items in the target block,
//   |u>    the normalized sum of every item outside the target block.
//
// With a single target and all local diffusions on the same m qubits, the
// state never leaves this subspace, and every operator is a real 3x3
// orthogonal matrix.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsearch/errors.hpp"
#include "qsearch/sequence.hpp"

namespace qsearch {

using Vec3 = std::array<double, 3>;

struct Mat3 {
    std::array<Vec3, 3> rows{};

    static Mat3 identity() { return Mat3{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}; }

    double operator()(int r, int c) const { return rows[r][c]; }
    double& operator()(int r, int c) { return rows[r][c]; }

    Mat3 operator*(const Mat3& o) const {
        Mat3 p;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) p(i, j) += (*this)(i, k) * o(k, j);
        return p;
    }

    Vec3 operator*(const Vec3& v) const {
        return {rows[0][0] * v[0] + rows[0][1] * v[1] + rows[0][2] * v[2],
                rows[1][0] * v[0] + rows[1][1] * v[1] + rows[1][2] * v[2],
                rows[2][0] * v[0] + rows[2][1] * v[1] + rows[2][2] * v[2]};
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 d;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d(i, j) = (*this)(i, j) - o(i, j);
        return d;
    }

    Mat3 transpose() const {
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
        return t;
    }

    double determinant() const {
        const auto& a = rows;
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& r : rows)
            for (double x : r) m = std::max(m, std::fabs(x));
        return m;
    }

    Mat3 pow(int k) const {
        Mat3 result = identity();
        Mat3 base = *this;
        for (; k > 0; k >>= 1) {
            if (k & 1) result = result * base;
            base = base * base;
        }
        return result;
    }
};

/// Database register of n qubits split into blocks of m qubits. `m == n`
/// means one block: |u> is absent and gamma = pi/2. That form only supports
/// global operators.
struct Subspace {
    int n = 2;
    int m = 2;

    static Subspace blocked(int n, int m) {
        if (m < 2 || m >= n) {
            throw std::out_of_range("block width m=" + std::to_string(m) + " outside [2, " + std::to_string(n - 1) +
                                    "] for n=" + std::to_string(n));
        }
        return {n, m};
    }

    static Subspace whole(int n) {
        if (n < 1 || n > 62) throw std::out_of_range("register width n=" + std::to_string(n) + " unsupported");
        return {n, n};
    }

    bool has_blocks() const { return m < n; }
};

/// sin theta = 2^{-n/2}, sin theta2 = 2^{-m/2}, sin gamma = 2^{-(n-m)/2}.
struct Angles {
    double theta = 0.0;
    double theta2 = 0.0;
    double gamma = 0.0;

    static Angles of(const Subspace& s) {
        auto angle = [](int bits) { return std::asin(std::sqrt(std::ldexp(1.0, -bits))); };
        return {angle(s.n), angle(s.m), angle(s.n - s.m)};
    }
};

struct ReducedState {
    double a_t = 0.0;
    double a_ntt = 0.0;
    double a_u = 0.0;

    Vec3 vec() const { return {a_t, a_ntt, a_u}; }
    static ReducedState from(const Vec3& v) { return {v[0], v[1], v[2]}; }

    double norm_squared() const { return a_t * a_t + a_ntt * a_ntt + a_u * a_u; }
    double target_probability() const { return a_t * a_t; }
    /// Probability that measuring the block-address qubits returns the target block.
    double block_probability() const { return a_t * a_t + a_ntt * a_ntt; }
};

/// Reduced matrix of one Grover-type operator; an element of O(3).
struct Generator {
    Mat3 matrix;

    ReducedState apply(const ReducedState& s) const { return ReducedState::from(matrix * s.vec()); }
    Generator pow(int k) const { return {matrix.pow(k)}; }
};

/// |s_n> = sin(gamma) sin(theta2)|t> + sin(gamma) cos(theta2)|ntt> + cos(gamma)|u>.
inline ReducedState initial_state(const Subspace& sub) {
    const double n_items = std::ldexp(1.0, sub.n);
    const double b_items = std::ldexp(1.0, sub.m);
    // Exact amplitudes from item counts: 1/sqrt(N), sqrt((b-1)/N), sqrt((N-b)/N).
    return {1.0 / std::sqrt(n_items), std::sqrt((b_items - 1.0) / n_items), std::sqrt((n_items - b_items) / n_items)};
}

inline ReducedState initial_state(int n, int m) { return initial_state(Subspace::blocked(n, m)); }

/// G_n = D_n U_t = (2 s s^T - I) diag(-1, 1, 1).
inline Generator global_generator(const Subspace& sub) {
    const Vec3 s = initial_state(sub).vec();
    Mat3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = (2.0 * s[i] * s[j] - (i == j ? 1.0 : 0.0)) * (j == 0 ? -1.0 : 1.0);
    return {g};
}

inline Generator global_generator(int n, int m) { return global_generator(Subspace::blocked(n, m)); }

/// G_m = D_m U_t: rotation by 2 theta2 in the (t, ntt) plane, |u> fixed.
inline Generator local_generator(const Subspace& sub) {
    if (!sub.has_blocks()) throw std::out_of_range("local operator needs a block width below n");
    const double b_items = std::ldexp(1.0, sub.m);
    // cos 2theta2 = 1 - 2/b, sin 2theta2 = 2 sqrt(b-1)/b.
    const double c = 1.0 - 2.0 / b_items;
    const double s = 2.0 * std::sqrt(b_items - 1.0) / b_items;
    return {Mat3{{{{c, s, 0.0}, {-s, c, 0.0}, {0.0, 0.0, 1.0}}}}};
}

inline Generator local_generator(int n, int m) { return local_generator(Subspace::blocked(n, m)); }

namespace detail {

inline Subspace subspace_for(const SequenceSpec& seq, int block_width) {
    if (seq.m() && *seq.m() != block_width) {
        throw SequenceError("sequence local width " + std::to_string(*seq.m()) + " differs from block width " +
                            std::to_string(block_width));
    }
    if (block_width == seq.n()) return Subspace::whole(seq.n());
    return Subspace::blocked(seq.n(), block_width);
}

}  // namespace detail

/// Applies `seq` in application order to `state`, with blocks of `block_width` qubits.
inline ReducedState apply_sequence(const SequenceSpec& seq, const ReducedState& state, int block_width) {
    const Subspace sub = detail::subspace_for(seq, block_width);
    const Generator global = global_generator(sub);
    ReducedState out = state;
    if (seq.is_pure_grover()) {
        for (const Block& b : seq.blocks()) out = global.pow(b.count).apply(out);
        return out;
    }
    const Generator local = local_generator(sub);
    for (const Block& b : seq.blocks()) {
        out = (b.kind == OperatorKind::global ? global : local).pow(b.count).apply(out);
    }
    return out;
}

/// Block width used when the caller does not pick one.
inline int natural_block_width(const SequenceSpec& seq) { return seq.m().value_or(seq.n()); }

inline ReducedState run_reduced(const SequenceSpec& seq, int block_width) {
    const Subspace sub = detail::subspace_for(seq, block_width);
    return apply_sequence(seq, initial_state(sub), block_width);
}

/// |<t| S |s_n>|^2.
inline double success_probability(const SequenceSpec& seq) {
    return run_reduced(seq, natural_block_width(seq)).target_probability();
}

inline double success_probability(const SequenceSpec& seq, int n, int m) {
    if (seq.n() != n) throw SequenceError("sequence acts on " + std::to_string(seq.n()) + " qubits, expected " +
                                          std::to_string(n));
    return run_reduced(seq, m).target_probability();
}

/// Probability that the n - m block-address qubits read the target's block.
inline double block_success_probability(const SequenceSpec& seq, int m) {
    return run_reduced(seq, m).block_probability();
}

inline double block_success_probability(const SequenceSpec& seq, int n, int m) {
    if (seq.n() != n) throw SequenceError("sequence acts on " + std::to_string(seq.n()) + " qubits, expected " +
                                          std::to_string(n));
    return block_success_probability(seq, m);
}

/// P_n(j) = sin^2((2j + 1) theta), sin theta = 2^{-n/2}.
inline double grover_probability_closed_form(int n, int j) {
    if (j < 0) throw std::invalid_argument("negative iteration count");
    const double theta = std::asin(std::sqrt(std::ldexp(1.0, -n)));
    const double s = std::sin((2.0 * j + 1.0) * theta);
    return s * s;
}

/// floor(pi sqrt(N) / 4).
inline int grover_j_max(int n) {
    return static_cast<int>(std::floor(std::numbers::pi * std::sqrt(std::ldexp(1.0, n)) / 4.0));
}

/// floor(0.583 sqrt(N)).
inline int grover_j_exp(int n) { return static_cast<int>(std::floor(0.583 * std::sqrt(std::ldexp(1.0, n)))); }

}  // namespace qsearch
