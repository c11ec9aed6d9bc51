// Small dense vectors and matrices over an exchangeable scalar type, plus the
// composition rules the machine constructions rely on: matrix product,
// Kronecker (tensor) product and block-diagonal stacking.
//
// Kronecker ordering is row-major throughout: (u ⊗ v)[(i * dim(v)) + j] =
// u[i] * v[j], and tensor_op is consistent with that ordering, so
// tensor_op(A, B) * tensor_vec(u, v) == tensor_vec(A * u, B * v).

#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "afa/numeric.hpp"

namespace afa {

template <typename S>
using Vector = std::vector<S>;

template <typename S>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

// Literal construction helpers, mostly for tests and small fixed matrices.
template <typename S>
Matrix<S> matrix_from(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix<S> m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("matrix_from: ragged rows");
        std::size_t j = 0;
        for (long v : row) m(i, j++) = S(v);
        ++i;
    }
    return m;
}

template <typename S>
Vector<S> vector_from(std::initializer_list<long> entries) {
    Vector<S> v;
    v.reserve(entries.size());
    for (long e : entries) v.push_back(S(e));
    return v;
}

template <typename S>
Vector<S> basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis_vector: index out of range");
    Vector<S> v(dim, S(0));
    v[index] = S(1);
    return v;
}

template <typename S>
S entry_sum(const Vector<S>& v) {
    S sum(0);
    for (const S& e : v) sum += e;
    return sum;
}

// ℓ1 norm: the sum of absolute values of the entries.
template <typename S>
S l1_norm(const Vector<S>& v) {
    if (v.empty()) throw std::invalid_argument("l1_norm: empty vector");
    S sum(0);
    for (const S& e : v) sum += ScalarTraits<S>::abs_value(e);
    return sum;
}

template <typename S>
Vector<S> apply(const Matrix<S>& m, const Vector<S>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
    Vector<S> out(m.rows(), S(0));
    S scratch(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (ScalarTraits<S>::is_zero(v[j])) continue;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (ScalarTraits<S>::is_zero(m(i, j))) continue;
            ScalarTraits<S>::fused_add_mul(out[i], m(i, j), v[j], scratch);
        }
    }
    return out;
}

template <typename S>
Matrix<S> matmul(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix<S> out(a.rows(), b.cols());
    S scratch(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const S& aik = a(i, k);
            if (ScalarTraits<S>::is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (ScalarTraits<S>::is_zero(b(k, j))) continue;
                ScalarTraits<S>::fused_add_mul(out(i, j), aik, b(k, j), scratch);
            }
        }
    }
    return out;
}

template <typename S>
Matrix<S> matrix_power(const Matrix<S>& m, unsigned long exponent) {
    if (!m.is_square()) throw std::invalid_argument("matrix_power: matrix must be square");
    Matrix<S> result = Matrix<S>::identity(m.rows());
    Matrix<S> base = m;
    while (exponent > 0) {
        if (exponent & 1UL) result = matmul(result, base);
        exponent >>= 1UL;
        if (exponent > 0) base = matmul(base, base);
    }
    return result;
}

template <typename S>
Vector<S> tensor_vec(const Vector<S>& u, const Vector<S>& v) {
    Vector<S> out;
    out.reserve(u.size() * v.size());
    for (const S& a : u)
        for (const S& b : v) out.push_back(a * b);
    return out;
}

template <typename S>
Matrix<S> tensor_op(const Matrix<S>& a, const Matrix<S>& b) {
    Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (ScalarTraits<S>::is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    if (ScalarTraits<S>::is_zero(b(k, l))) continue;
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

template <typename S>
Matrix<S> block_diag(const std::vector<Matrix<S>>& blocks) {
    std::size_t dim = 0;
    for (const auto& b : blocks) {
        if (!b.is_square()) throw std::invalid_argument("block_diag: blocks must be square");
        dim += b.rows();
    }
    Matrix<S> out(dim, dim);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(offset + i, offset + j) = b(i, j);
        offset += b.rows();
    }
    return out;
}

template <typename S>
Vector<S> column_sums(const Matrix<S>& m) {
    Vector<S> sums(m.cols(), S(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += m(i, j);
    return sums;
}

inline Matrix<BigFloat> to_float(const Matrix<Rational>& m, mpfr_prec_t prec) {
    Matrix<BigFloat> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!ScalarTraits<Rational>::is_zero(m(i, j))) out(i, j) = to_bigfloat(m(i, j), prec);
    return out;
}

}  // namespace afa
