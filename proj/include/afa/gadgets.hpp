// Small linear building blocks used by the machine constructions. All are
// returned as plain (not yet affinized) matrices; callers compose them and
// affinize the product once.

#pragma once

#include <stdexcept>

#include "afa/linalg.hpp"

namespace afa {

// [[1,0],[d,1]]: maps (1, a) to (1, a + d).
template <typename S>
Matrix<S> shear_add(long d) {
    return matrix_from<S>({{1, 0}, {d, 1}});
}

// 3×3 identity plus entry k at (dst, src). Applying it m times to a vector
// whose src entry is pinned at 1 adds k*m to the dst entry.
template <typename S>
Matrix<S> count_by(long k, std::size_t src, std::size_t dst) {
    if (src == dst) throw std::invalid_argument("count_by: src and dst must differ");
    if (src >= 3 || dst >= 3) throw std::invalid_argument("count_by: index out of range");
    Matrix<S> m = Matrix<S>::identity(3);
    m(dst, src) = S(k);
    return m;
}

// [[1,-1],[0,1]]: maps (a, b) to (a − b, b).
template <typename S>
Matrix<S> subtract_pair() {
    return matrix_from<S>({{1, -1}, {0, 1}});
}

// [[1,0],[0,c]]: maps (a, b) to (a, b·c).
template <typename S>
Matrix<S> scale_entry(const S& c) {
    Matrix<S> m = Matrix<S>::identity(2);
    m(1, 1) = c;
    return m;
}

// Counter-clockwise rotation on the unit circle; m-fold application to
// (1, 0) yields (cos mθ, sin mθ).
inline Matrix<BigFloat> rotation(const BigFloat& theta) {
    Matrix<BigFloat> m(2, 2);
    const BigFloat c = cos(theta);
    const BigFloat s = sin(theta);
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
}

}  // namespace afa
