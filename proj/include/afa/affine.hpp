// Affinization and the affine invariants.
//
// An affine operator is a square matrix whose columns each sum to 1; applied
// to a vector with entry sum 1 it yields another vector with entry sum 1.
// affinize embeds an arbitrary d×d linear matrix into a (d+1)×(d+1) affine
// operator by appending a balancing row that absorbs each column's deficit.

#pragma once

#include <cstdlib>
#include <stdexcept>

#include "afa/linalg.hpp"

namespace afa {

// Embeds M into an affine operator one dimension larger:
//   - the top-left d×d block is M,
//   - column d (the balance column) is the basis vector e_d,
//   - row d holds 1 minus each column sum of M.
// For any input (v | s) with Σv + s = 1 the result is (M·v | 1 − ΣM·v).
template <typename S>
Matrix<S> affinize(const Matrix<S>& m) {
    if (!m.is_square()) throw std::invalid_argument("affinize: matrix must be square");
    const std::size_t d = m.rows();
    Matrix<S> out(d + 1, d + 1);
    for (std::size_t j = 0; j < d; ++j) {
        S colsum(0);
        for (std::size_t i = 0; i < d; ++i) {
            out(i, j) = m(i, j);
            colsum += m(i, j);
        }
        out(d, j) = S(1) - colsum;
    }
    out(d, d) = S(1);
    return out;
}

// In-place variant for matrices that already have their final dimension:
// adds each column's deficit to the chosen balance row.
template <typename S>
void balance_columns(Matrix<S>& m, std::size_t balance_row) {
    if (!m.is_square()) throw std::invalid_argument("balance_columns: matrix must be square");
    if (balance_row >= m.rows()) throw std::invalid_argument("balance_columns: row out of range");
    for (std::size_t j = 0; j < m.cols(); ++j) {
        S colsum(0);
        for (std::size_t i = 0; i < m.rows(); ++i) colsum += m(i, j);
        m(balance_row, j) += S(1) - colsum;
    }
}

template <typename S>
double entry_sum_deviation(const Vector<S>& v) {
    S dev = entry_sum(v) - S(1);
    return std::abs(ScalarTraits<S>::to_double(dev));
}

template <typename S>
double max_column_sum_deviation(const Matrix<S>& m) {
    double worst = 0.0;
    for (const S& colsum : column_sums(m)) {
        S dev = colsum - S(1);
        double d = std::abs(ScalarTraits<S>::to_double(dev));
        if (d > worst) worst = d;
    }
    return worst;
}

template <typename S>
bool is_affine_operator(const Matrix<S>& m, const NumericField& field) {
    if (!m.is_square() || m.rows() == 0) return false;
    if (field.is_exact()) {
        for (const S& colsum : column_sums(m))
            if (!(colsum == S(1))) return false;
        return true;
    }
    return max_column_sum_deviation(m) <= field.sum_tolerance();
}

template <typename S>
bool is_state_vector(const Vector<S>& v, const NumericField& field) {
    if (v.empty()) return false;
    if (field.is_exact()) return entry_sum(v) == S(1);
    return entry_sum_deviation(v) <= field.sum_tolerance();
}

}  // namespace afa
