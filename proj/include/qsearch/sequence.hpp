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

// Operator sequences built from global (G_n) and local (G_m) Grover operators.
//
// A sequence is stored as an explicit list of blocks in application order:
// the first block acts first on |s_n>. The textual form S_{n,m}(j_1,...,j_q)
// exists only at the I/O boundary. Its tuple is read right to left: j_q
// counts the local operators applied first, j_{q-1} the global operators
// applied next, and so on, alternating. So
//
//     S_{6,4}(1,2)   = G_4, G_4, G_6        (local first)
//     S_{6,4}(1,1,2) = G_4, G_4, G_6, G_4
//     S_6(4,0)       = G_6, G_6, G_6, G_6
//
// Local operators always act on the m least significant qubits.

#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qsearch/errors.hpp"

namespace qsearch {

enum class OperatorKind { global, local };

inline OperatorKind other(OperatorKind k) {
    return k == OperatorKind::global ? OperatorKind::local : OperatorKind::global;
}

struct Block {
    OperatorKind kind = OperatorKind::global;
    int count = 0;

    friend bool operator==(const Block&, const Block&) = default;
};

struct OperatorCounts {
    int oracle_calls = 0;
    int globals = 0;
    int locals = 0;

    friend bool operator==(const OperatorCounts&, const OperatorCounts&) = default;
};

/// S_{n,m}(j_1,...,j_q) in normalized block form.
///
/// Normalization removes zero-count blocks, merges adjacent blocks of the
/// same kind, and drops the local width when no local operator remains.
class SequenceSpec {
 public:
    SequenceSpec() = default;

    SequenceSpec(int n, std::optional<int> m, std::vector<Block> blocks)
        : n_(n), m_(m), blocks_(std::move(blocks)) {
        normalize();
    }

    /// G_n^j.
    static SequenceSpec grover(int n, int j) {
        return SequenceSpec(n, std::nullopt, {{OperatorKind::global, j}});
    }

    int n() const { return n_; }
    std::optional<int> m() const { return m_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }
    bool is_pure_grover() const { return !m_.has_value(); }

    OperatorCounts counts() const {
        OperatorCounts c;
        for (const Block& b : blocks_) {
            (b.kind == OperatorKind::global ? c.globals : c.locals) += b.count;
        }
        c.oracle_calls = c.globals + c.locals;
        return c;
    }

    /// One entry per operator, in application order.
    std::vector<OperatorKind> expand() const {
        std::vector<OperatorKind> ops;
        for (const Block& b : blocks_) ops.insert(ops.end(), static_cast<std::size_t>(b.count), b.kind);
        return ops;
    }

    /// Appends `other` after this sequence (other acts last).
    SequenceSpec then(const SequenceSpec& other) const {
        if (other.n_ != n_) throw SequenceError("cannot concatenate sequences over different registers");
        std::optional<int> m = m_ ? m_ : other.m_;
        if (m_ && other.m_ && *m_ != *other.m_) {
            throw SequenceError("cannot concatenate sequences with different local widths");
        }
        std::vector<Block> blocks = blocks_;
        blocks.insert(blocks.end(), other.blocks_.begin(), other.blocks_.end());
        return SequenceSpec(n_, m, std::move(blocks));
    }

    friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

 private:
    void normalize() {
        if (n_ < 1) throw SequenceError("sequence register width must be positive, got " + std::to_string(n_));
        std::vector<Block> merged;
        for (const Block& b : blocks_) {
            if (b.count < 0) throw SequenceError("negative operator count " + std::to_string(b.count));
            if (b.count == 0) continue;
            if (!merged.empty() && merged.back().kind == b.kind) {
                merged.back().count += b.count;
            } else {
                merged.push_back(b);
            }
        }
        blocks_ = std::move(merged);
        bool has_local = false;
        for (const Block& b : blocks_) has_local |= b.kind == OperatorKind::local;
        if (!has_local) {
            m_.reset();
            return;
        }
        if (!m_) throw SequenceError("sequence has local operators but no local width");
        if (*m_ < 2 || *m_ >= n_) {
            throw SequenceError("local width m=" + std::to_string(*m_) + " outside [2, " + std::to_string(n_ - 1) +
                                "] for n=" + std::to_string(n_));
        }
    }

    int n_ = 1;
    std::optional<int> m_;
    std::vector<Block> blocks_;
};

inline OperatorCounts operator_counts(const SequenceSpec& seq) { return seq.counts(); }

namespace detail {

class NotationParser {
 public:
    explicit NotationParser(std::string_view text) : text_(text) {}

    SequenceSpec parse() {
        skip_space();
        expect('S');
        expect('_');
        int n = 0;
        std::optional<int> m;
        if (peek() == '{') {
            ++pos_;
            n = integer("n");
            if (peek() == ',') {
                ++pos_;
                m = integer("m");
            }
            expect('}');
        } else {
            n = integer("n");
        }
        expect('(');
        std::vector<int> tuple{integer("j_1")};
        while (peek() == ',') {
            ++pos_;
            tuple.push_back(integer("j_" + std::to_string(tuple.size() + 1)));
        }
        expect(')');
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters");

        // Tuple read right to left; the last entry is always local.
        std::vector<Block> blocks;
        OperatorKind kind = OperatorKind::local;
        for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) {
            if (kind == OperatorKind::local && *it != 0 && !m) {
                fail("local count " + std::to_string(*it) + " given but no local width m");
            }
            blocks.push_back({kind, *it});
            kind = other(kind);
        }
        try {
            return SequenceSpec(n, m, std::move(blocks));
        } catch (const SequenceError& e) {
            fail(e.what());
        }
    }

 private:
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    int integer(const std::string& what) {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer for " + what);
        if (pos_ - start > 6) fail("integer too large for " + what);
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    [[noreturn]] void fail(const std::string& why) const {
        std::string near = pos_ < text_.size() ? std::string(text_.substr(pos_, 8)) : std::string("<end>");
        throw SequenceError("cannot parse sequence \"" + std::string(text_) + "\": " + why + " at offset " +
                            std::to_string(pos_) + " near '" + near + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline SequenceSpec parse_paper_notation(std::string_view text) { return detail::NotationParser(text).parse(); }

/// Tuple form (j_1,...,j_q) of a normalized sequence; j_q is the leading local count.
inline std::vector<int> notation_tuple(const SequenceSpec& seq) {
    std::vector<int> app_order;
    if (seq.empty() || seq.blocks().front().kind == OperatorKind::global) app_order.push_back(0);
    for (const Block& b : seq.blocks()) app_order.push_back(b.count);
    return {app_order.rbegin(), app_order.rend()};
}

inline std::string format_paper_notation(const SequenceSpec& seq) {
    std::string out = "S_";
    if (seq.m()) {
        out += "{" + std::to_string(seq.n()) + "," + std::to_string(*seq.m()) + "}";
    } else if (seq.n() >= 10) {
        out += "{" + std::to_string(seq.n()) + "}";
    } else {
        out += std::to_string(seq.n());
    }
    out += "(";
    const std::vector<int> tuple = notation_tuple(seq);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(tuple[i]);
    }
    return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const SequenceSpec& seq) { return os << format_paper_notation(seq); }

/// Two-stage search plan: stage 1 reveals the top m1 bits, stage 2 searches the
/// remaining m2-qubit block.
class TwoStagePlan {
 public:
    TwoStagePlan(int n, int m2, SequenceSpec stage1, SequenceSpec stage2)
        : n_(n), m2_(m2), stage1_(std::move(stage1)), stage2_(std::move(stage2)) {
        if (m2_ < 1 || m2_ > n_) {
            throw SequenceError("stage-2 width m2=" + std::to_string(m2_) + " outside [1, " + std::to_string(n_) + "]");
        }
        if (stage1_.n() != n_) throw SequenceError("stage-1 sequence must act on all n qubits");
        if (stage1_.m() && *stage1_.m() != m2_) {
            throw SequenceError("stage-1 local width " + std::to_string(*stage1_.m()) + " must equal m2=" +
                                std::to_string(m2_));
        }
        if (m2_ == n_ && !stage1_.empty()) {
            throw SequenceError("stage 1 must be empty when m2 equals n");
        }
        if (stage2_.n() != m2_) {
            throw SequenceError("stage-2 sequence must act on m2=" + std::to_string(m2_) + " qubits");
        }
    }

    int n() const { return n_; }
    int m1() const { return n_ - m2_; }
    int m2() const { return m2_; }
    std::optional<int> m_prime() const { return stage2_.m(); }
    const SequenceSpec& stage1() const { return stage1_; }
    const SequenceSpec& stage2() const { return stage2_; }

    friend bool operator==(const TwoStagePlan&, const TwoStagePlan&) = default;

 private:
    int n_;
    int m2_;
    SequenceSpec stage1_;
    SequenceSpec stage2_;
};

}  // namespace qsearch
