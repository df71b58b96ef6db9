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

// Brute-force simulation over all 2^n amplitudes.
//
// Operators act as direct arithmetic updates: the oracle flips one sign,
// diffusions reflect amplitudes about the register (or block) mean. Qubit 0
// is the most significant bit of the basis index, so the local block of m
// qubits is the contiguous index range of 2^m items sharing the top n - m
// bits.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsearch/errors.hpp"
#include "qsearch/sequence.hpp"

namespace qsearch {

class TargetSpec {
 public:
    TargetSpec(int n, std::uint64_t index) : n_(n), index_(index) {
        if (n < 1 || n > 30) throw std::out_of_range("target width " + std::to_string(n) + " unsupported");
        if (index >= (std::uint64_t{1} << n)) {
            throw std::out_of_range("target index " + std::to_string(index) + " needs more than " + std::to_string(n) +
                                    " bits");
        }
    }

    static TargetSpec zeros(int n) { return TargetSpec(n, 0); }

    /// Most significant bit first, e.g. "000000".
    static TargetSpec from_bits(std::string_view bits) {
        if (bits.empty()) throw std::invalid_argument("empty target bit string");
        std::uint64_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') throw std::invalid_argument("target bit string may only contain 0 and 1");
            index = (index << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return TargetSpec(static_cast<int>(bits.size()), index);
    }

    int n() const { return n_; }
    std::uint64_t index() const { return index_; }

    std::string bits() const {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int q = 0; q < n_; ++q) {
            if ((index_ >> (n_ - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
        }
        return s;
    }

 private:
    int n_;
    std::uint64_t index_;
};

class StateVector {
 public:
    /// |s_n> = H^{(x)n} |0...0>.
    static StateVector uniform(int n) {
        if (n < 1 || n > 26) throw std::out_of_range("state vector width " + std::to_string(n) + " unsupported");
        StateVector s;
        s.n_ = n;
        s.amps_.assign(std::size_t{1} << n, 1.0 / std::sqrt(std::ldexp(1.0, n)));
        return s;
    }

    int n() const { return n_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const double> amplitudes() const { return amps_; }
    std::span<double> amplitudes() { return amps_; }
    double operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const {
        return std::transform_reduce(amps_.begin(), amps_.end(), 0.0, std::plus<>(), [](double a) { return a * a; });
    }

 private:
    int n_ = 0;
    std::vector<double> amps_;
};

inline void apply_oracle(StateVector& state, const TargetSpec& target) {
    if (target.n() != state.n()) {
        throw std::invalid_argument("target has " + std::to_string(target.n()) + " bits, state has " +
                                    std::to_string(state.n()) + " qubits");
    }
    state.amplitudes()[target.index()] *= -1.0;
}

namespace detail {

inline void reflect_about_mean(std::span<double> amps) {
    const double mean = std::accumulate(amps.begin(), amps.end(), 0.0) / static_cast<double>(amps.size());
    for (double& a : amps) a = 2.0 * mean - a;
}

}  // namespace detail

/// D_n: a_i <- 2 mean(a) - a_i.
inline void apply_global_diffusion(StateVector& state) { detail::reflect_about_mean(state.amplitudes()); }

/// D_{n,m}: reflect about the mean inside each contiguous block of 2^m items.
inline void apply_local_diffusion(StateVector& state, int m) {
    if (m < 2 || m >= state.n()) {
        throw std::out_of_range("local width m=" + std::to_string(m) + " outside [2, " + std::to_string(state.n() - 1) +
                                "]");
    }
    const std::size_t block = std::size_t{1} << m;
    auto amps = state.amplitudes();
    for (std::size_t start = 0; start < amps.size(); start += block) {
        detail::reflect_about_mean(amps.subspan(start, block));
    }
}

/// Runs `seq` from |s_n>; each operator is an oracle call followed by its diffusion.
inline StateVector run_sequence_full(const SequenceSpec& seq, const TargetSpec& target) {
    if (target.n() != seq.n()) {
        throw SequenceError("target has " + std::to_string(target.n()) + " bits but sequence acts on " +
                            std::to_string(seq.n()) + " qubits");
    }
    StateVector state = StateVector::uniform(seq.n());
    for (const Block& b : seq.blocks()) {
        for (int i = 0; i < b.count; ++i) {
            apply_oracle(state, target);
            if (b.kind == OperatorKind::global) {
                apply_global_diffusion(state);
            } else {
                apply_local_diffusion(state, *seq.m());
            }
        }
    }
    return state;
}

/// Probability that measuring `qubits` (0 = most significant) yields `bits`.
inline double marginal_probability(const StateVector& state, std::span<const int> qubits, std::string_view bits) {
    if (qubits.size() != bits.size()) {
        throw std::invalid_argument("qubit subset has " + std::to_string(qubits.size()) + " entries but " +
                                    std::to_string(bits.size()) + " bits were given");
    }
    std::uint64_t mask = 0;
    std::uint64_t want = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const int q = qubits[i];
        if (q < 0 || q >= state.n()) throw std::out_of_range("qubit " + std::to_string(q) + " outside register");
        if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("bits may only contain 0 and 1");
        const std::uint64_t bit = std::uint64_t{1} << (state.n() - 1 - q);
        if (mask & bit) throw std::invalid_argument("qubit " + std::to_string(q) + " listed twice");
        mask |= bit;
        if (bits[i] == '1') want |= bit;
    }
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == want) p += amps[i] * amps[i];
    }
    return p;
}

/// Marginal on the top n - m qubits matching the target's block address.
inline double block_marginal(const StateVector& state, const TargetSpec& target, int m) {
    std::vector<int> qubits;
    for (int q = 0; q < state.n() - m; ++q) qubits.push_back(q);
    return marginal_probability(state, qubits, target.bits().substr(0, qubits.size()));
}

inline double target_probability(const StateVector& state, const TargetSpec& target) {
    const double a = state[target.index()];
    return a * a;
}

}  // namespace qsearch
