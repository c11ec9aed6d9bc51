// The machine model and its run loop.
//
// An AfaMachine is a finite set of affine operators, one per input symbol
// plus one for each end-marker, together with an initial state and a set of
// accepting states. A run applies the left-marker operator to the initial
// basis vector, then one operator per input symbol, then the right-marker
// operator, and finally weights the result: state j is observed with
// probability |v[j]| / ℓ1(v).
//
// Machines are immutable after construction and safe to share across
// threads; each run keeps all mutable state on its own stack.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afa/affine.hpp"
#include "afa/linalg.hpp"

namespace afa {

// Column-grouped sparse form of an operator; the run loop walks nonzero
// entries only and skips columns whose source entry is zero.
template <typename S>
struct SparseOp {
    struct ColRange {
        std::size_t col, lo, hi;
    };

    std::size_t dim = 0;
    std::vector<ColRange> columns;
    std::vector<std::size_t> row_index;
    std::vector<S> values;

    static SparseOp compile(const Matrix<S>& m) {
        SparseOp op;
        op.dim = m.rows();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const std::size_t lo = op.values.size();
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (ScalarTraits<S>::is_zero(m(i, j))) continue;
                op.row_index.push_back(i);
                op.values.push_back(m(i, j));
            }
            if (op.values.size() > lo) op.columns.push_back({j, lo, op.values.size()});
        }
        return op;
    }

    std::size_t nonzeros() const { return values.size(); }

    void apply_into(const Vector<S>& x, Vector<S>& y, S& scratch) const {
        for (S& e : y) ScalarTraits<S>::set_zero(e);
        for (const ColRange& c : columns) {
            const S& xj = x[c.col];
            if (ScalarTraits<S>::is_zero(xj)) continue;
            for (std::size_t t = c.lo; t < c.hi; ++t)
                ScalarTraits<S>::fused_add_mul(y[row_index[t]], values[t], xj, scratch);
        }
    }
};

template <typename S>
struct RunOptions {
    bool record_trace = false;
    bool check_entry_sums = false;
};

template <typename S>
struct RunResult {
    Vector<S> final_vector;
    S accept_probability;
    std::optional<std::vector<Vector<S>>> trace;  // one state per applied operator
};

// Observation probability of the accepting states: Σ |v[j]| / ℓ1(v).
template <typename S>
S weighting(const Vector<S>& v, const std::vector<std::size_t>& accepting) {
    const S norm = l1_norm(v);
    if (ScalarTraits<S>::is_zero(norm)) throw std::runtime_error("weighting: zero l1 norm");
    S hit(0);
    for (std::size_t j : accepting) {
        if (j >= v.size()) throw std::invalid_argument("weighting: accepting index out of range");
        hit += ScalarTraits<S>::abs_value(v[j]);
    }
    return hit / norm;
}

template <typename S>
class AfaMachine {
public:
    AfaMachine(std::string alphabet,
               std::vector<Matrix<S>> symbol_ops,
               Matrix<S> left_marker_op,
               Matrix<S> right_marker_op,
               std::size_t initial_state,
               std::vector<std::size_t> accepting_states,
               NumericField field)
        : alphabet_(std::move(alphabet)),
          symbol_ops_(std::move(symbol_ops)),
          left_op_(std::move(left_marker_op)),
          right_op_(std::move(right_marker_op)),
          initial_state_(initial_state),
          accepting_(std::move(accepting_states)),
          field_(field) {
        if (alphabet_.size() != symbol_ops_.size())
            throw std::invalid_argument("AfaMachine: one operator per alphabet symbol required");
        if (!left_op_.is_square() || left_op_.rows() == 0)
            throw std::invalid_argument("AfaMachine: marker operators must be square and non-empty");
        dim_ = left_op_.rows();
        auto check_op = [&](const Matrix<S>& m, const std::string& label) {
            if (!m.is_square() || m.rows() != dim_)
                throw std::invalid_argument("AfaMachine: operator dimension mismatch for " + label);
            if (!is_affine_operator(m, field_))
                throw std::invalid_argument("AfaMachine: operator for " + label +
                                            " violates the column-sum invariant");
        };
        check_op(left_op_, "left marker");
        check_op(right_op_, "right marker");
        symbol_index_.fill(-1);
        for (std::size_t s = 0; s < alphabet_.size(); ++s) {
            const unsigned char ch = static_cast<unsigned char>(alphabet_[s]);
            if (symbol_index_[ch] != -1)
                throw std::invalid_argument("AfaMachine: duplicate alphabet symbol");
            symbol_index_[ch] = static_cast<int>(s);
            check_op(symbol_ops_[s], std::string("symbol '") + alphabet_[s] + "'");
        }
        if (initial_state_ >= dim_) throw std::invalid_argument("AfaMachine: initial state out of range");
        for (std::size_t a : accepting_)
            if (a >= dim_) throw std::invalid_argument("AfaMachine: accepting state out of range");

        sparse_left_ = SparseOp<S>::compile(left_op_);
        sparse_right_ = SparseOp<S>::compile(right_op_);
        sparse_symbol_.reserve(symbol_ops_.size());
        for (const auto& m : symbol_ops_) sparse_symbol_.push_back(SparseOp<S>::compile(m));
    }

    std::size_t dim() const { return dim_; }
    const std::string& alphabet() const { return alphabet_; }
    const NumericField& field() const { return field_; }
    std::size_t initial_state() const { return initial_state_; }
    const std::vector<std::size_t>& accepting() const { return accepting_; }
    const Matrix<S>& left_op() const { return left_op_; }
    const Matrix<S>& right_op() const { return right_op_; }

    const Matrix<S>& op(char symbol) const {
        const int idx = symbol_index_[static_cast<unsigned char>(symbol)];
        if (idx < 0) throw std::invalid_argument(std::string("AfaMachine: unknown symbol '") + symbol + "'");
        return symbol_ops_[static_cast<std::size_t>(idx)];
    }

    int lookup(char symbol) const { return symbol_index_[static_cast<unsigned char>(symbol)]; }
    const SparseOp<S>& sparse_left() const { return sparse_left_; }
    const SparseOp<S>& sparse_right() const { return sparse_right_; }
    const SparseOp<S>& sparse_symbol(std::size_t idx) const { return sparse_symbol_[idx]; }

private:
    std::string alphabet_;
    std::vector<Matrix<S>> symbol_ops_;
    Matrix<S> left_op_, right_op_;
    std::size_t initial_state_;
    std::vector<std::size_t> accepting_;
    NumericField field_;
    std::size_t dim_ = 0;
    std::array<int, 256> symbol_index_{};
    SparseOp<S> sparse_left_, sparse_right_;
    std::vector<SparseOp<S>> sparse_symbol_;
};

template <typename S>
RunResult<S> run(const AfaMachine<S>& machine, std::string_view input, const RunOptions<S>& options = {}) {
    Vector<S> cur = basis_vector<S>(machine.dim(), machine.initial_state());
    Vector<S> next(machine.dim(), S(0));
    S scratch(0);

    RunResult<S> result;
    if (options.record_trace) {
        result.trace.emplace();
        result.trace->reserve(input.size() + 2);
    }

    auto step = [&](const SparseOp<S>& op, std::size_t position) {
        op.apply_into(cur, next, scratch);
        cur.swap(next);
        if (options.check_entry_sums && !is_state_vector(cur, machine.field()))
            throw std::runtime_error("run: state vector entry sum drifted from 1 at step " +
                                     std::to_string(position));
        if (options.record_trace) result.trace->push_back(cur);
    };

    step(machine.sparse_left(), 0);
    for (std::size_t i = 0; i < input.size(); ++i) {
        const int idx = machine.lookup(input[i]);
        if (idx < 0)
            throw std::invalid_argument("run: unknown symbol '" + std::string(1, input[i]) +
                                        "' at position " + std::to_string(i));
        step(machine.sparse_symbol(static_cast<std::size_t>(idx)), i + 1);
    }
    step(machine.sparse_right(), input.size() + 1);

    result.accept_probability = weighting(cur, machine.accepting());
    result.final_vector = std::move(cur);
    return result;
}

}  // namespace afa
