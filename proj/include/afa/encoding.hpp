// Real-valued membership encoding: a whole unary language is packed into a
// single rotation angle, one signed base-8 digit per string.
//
// The 5-state rotation machine applies that angle once per input symbol 'a'
// (plus once at the left marker), rotates by π/4 at the right marker and
// collects the squared components, ending in (sin²α, cos²α, 0, 0, 0). For
// the n-th member string of the block language the accumulated angle lands
// near π/2 when a^n is in the language and near 0 when it is not, giving the
// 0.98 separation. Tensoring with the block recognizer yields the combined
// machine whose acceptance probability is sin²α / (1 + 2k·mismatch).

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "afa/affine.hpp"
#include "afa/gadgets.hpp"
#include "afa/machine.hpp"
#include "afa/oracle.hpp"
#include "afa/powereq.hpp"

namespace afa::encoding {

// Number of series terms needed to support member strings with up to n_max
// separators while keeping `guard` base-8 digits of headroom.
inline int required_terms(int n_max, int guard) {
    if (n_max < 0) throw std::invalid_argument("required_terms: n_max must be non-negative");
    if (guard < 1) throw std::invalid_argument("required_terms: guard must be at least 1");
    return n_max + 1 + guard;
}

// Truncating the series after `terms` terms perturbs the angle by at most
// 2π/(7·8^(terms+1)) per rotation (geometric tail).
inline double angle_truncation_bound(int terms) {
    return 2.0 * M_PI / (7.0 * std::pow(8.0, terms + 1));
}

// Conservative envelope on the total angle drift after 8^(n_max+1)
// rotations with required_terms(n_max, guard) series terms. The exact
// product of per-rotation bound and rotation count is 8× smaller; the
// envelope is what the truncation policy guarantees.
inline double accumulated_angle_error_bound(int /*n_max*/, int guard) {
    return 2.0 * M_PI / (7.0 * std::pow(8.0, guard));
}

// Largest accumulated drift that provably keeps the 0.98 separation: the
// worst-case analysis angle sits 2π/56 away from π/2 (or 0), and 0.98
// tolerates angles up to arccos(√0.98).
inline double certification_slack() {
    return std::acos(std::sqrt(0.98)) - 2.0 * M_PI / 56.0;
}

// Mantissa bits that keep rotation round-off far below the acceptance
// tolerances for machines sized for n_max; never below 128.
inline mpfr_prec_t required_float_bits(int n_max) { return 64 + 3 * (n_max + 2) * 3; }

inline mpfr_prec_t default_precision(int n_max) {
    return std::max<mpfr_prec_t>(128, required_float_bits(n_max));
}

// Partial sum of the membership series, in radians. The full series is
// bounded by 2π/56 in magnitude; truncation after `terms` terms stays
// within 2π/(7·8^(terms+1)) of the full value.
struct TruncatedAngle {
    BigFloat value;
    int terms = 0;
    int guard = 0;
};

// 2π Σ_{i=0}^{terms−1} sign(a^i) / 8^(i+2), evaluated at `prec` bits.
inline TruncatedAngle membership_angle(const LanguageOracle& oracle, int terms, mpfr_prec_t prec) {
    if (terms < 1) throw std::invalid_argument("membership_angle: at least one term required");
    BigFloat sum = BigFloat::zero(prec);
    BigFloat term = BigFloat::zero(prec);
    for (int i = 0; i < terms; ++i) {
        // ±8^-(i+2) is a power of two, so each term is exact.
        mpfr_set_si_2exp(term.raw(), membership_sign(oracle, static_cast<unsigned long long>(i)),
                         -3 * (i + 2), MPFR_RNDN);
        sum += term;
    }
    return TruncatedAngle{sum * BigFloat::pi(prec) * 2L, terms, 0};
}

// Closed form of the analysis angle for the member string with j
// separators: (π/4)(sign(a^j) + 1) plus the signed base-8 tail of all later
// strings, truncated to the same series length as the machine.
inline BigFloat member_final_angle(const LanguageOracle& oracle, int j, int terms, mpfr_prec_t prec) {
    if (terms <= j) throw std::invalid_argument("member_final_angle: terms must exceed the block index");
    BigFloat tail = BigFloat::zero(prec);
    BigFloat term = BigFloat::zero(prec);
    for (int i = j + 1; i < terms; ++i) {
        mpfr_set_si_2exp(term.raw(), membership_sign(oracle, static_cast<unsigned long long>(i)),
                         -3 * (i - j + 1), MPFR_RNDN);
        tail += term;
    }
    const BigFloat pi = BigFloat::pi(prec);
    return (pi / 4L) * (membership_sign(oracle, static_cast<unsigned long long>(j)) + 1L) +
           tail * pi * 2L;
}

// The fixed 5×5 collection operator applied at the right marker: routes the
// tensor square (cos²α, cs, cs, sin²α, −2cs) onto (sin²α, cos²α, 0, 0, 0).
// Every column already sums to 1.
template <typename S>
Matrix<S> collection_matrix() {
    return matrix_from<S>({{0, 0, 0, 1, 0},
                           {1, 0, 0, 0, 0},
                           {0, 1, 1, 0, 1},
                           {0, 1, 1, 0, 1},
                           {0, -1, -1, 0, -1}});
}

// The 5-state rotation machine: state (u ⊗ u | balance) with u on the unit
// circle. 'a' rotates by the membership angle, 'b' is the identity, the
// left marker contributes one extra rotation so that the n-th member string
// accumulates exactly 8^(n+1) rotations, and the right marker rotates by
// π/4 and collects.
inline AfaMachine<BigFloat> build_rotation_machine(const TruncatedAngle& angle, mpfr_prec_t prec) {
    const Matrix<BigFloat> rot = rotation(angle.value);
    const Matrix<BigFloat> rotate_once = affinize(tensor_op(rot, rot));
    const Matrix<BigFloat> quarter = rotation(BigFloat::pi(prec) / 4L);
    const Matrix<BigFloat> right =
        matmul(collection_matrix<BigFloat>(), affinize(tensor_op(quarter, quarter)));
    return AfaMachine<BigFloat>("ab", {rotate_once, Matrix<BigFloat>::identity(5)}, rotate_once,
                                right, 0, {0}, NumericField::high_precision_float(prec));
}

struct CombinedMachine {
    AfaMachine<BigFloat> machine;
    long k;
    LanguageOracle oracle;
    int n_max;
    int guard;
    TruncatedAngle angle;
    mpfr_prec_t precision_bits;
    unsigned long long max_a_count;  // 8^(n_max+1); longer inputs are refused
    double angle_error_bound;
    bool bound_certified;  // error bound small enough to preserve the 0.98 separation
};

// Tensor composition of the block recognizer (cast to the float backend)
// with the rotation machine, plus the final combine step at the right
// marker that routes the product basis onto
//   (sin²α, cos²α, k·T(sin²+cos²), −k·T(sin²+cos²), 0, ..., 0).
inline CombinedMachine build_machine(const LanguageOracle& oracle, long k, int n_max, int guard,
                                     mpfr_prec_t prec = 0) {
    if (k < 2) throw std::invalid_argument("build_machine: k must be at least 2");
    if (n_max < 0 || n_max > 18) throw std::invalid_argument("build_machine: n_max out of range");
    const int terms = required_terms(n_max, guard);
    if (prec == 0) prec = default_precision(n_max);
    if (prec < 64) throw std::invalid_argument("build_machine: precision must be at least 64 bits");

    TruncatedAngle angle = membership_angle(oracle, terms, prec);
    angle.guard = guard;

    const powereq::PowerEqMachine block_machine = powereq::build_machine(k);
    const AfaMachine<BigFloat> rot_machine = build_rotation_machine(angle, prec);

    const auto& pm = block_machine.machine;
    const Matrix<BigFloat> pa = to_float(pm.op('a'), prec);
    const Matrix<BigFloat> pb = to_float(pm.op('b'), prec);
    const Matrix<BigFloat> pleft = to_float(pm.left_op(), prec);
    const Matrix<BigFloat> pright = to_float(pm.right_op(), prec);

    const std::size_t block_dim = pm.dim();     // 20
    const std::size_t rot_dim = rot_machine.dim();  // 5
    const std::size_t dim = block_dim * rot_dim;

    // Combine step: the tensored right markers leave the product of
    // (1, kT, −kT, 0, ...) and (sin²α, cos²α, 0, 0, 0); route those six
    // populated coordinates onto the final layout and balance the rest.
    Matrix<BigFloat> combine(dim, dim);
    combine(0, 0 * rot_dim + 0) = BigFloat(1, prec);
    combine(1, 0 * rot_dim + 1) = BigFloat(1, prec);
    combine(2, 1 * rot_dim + 0) = BigFloat(1, prec);
    combine(2, 1 * rot_dim + 1) = BigFloat(1, prec);
    combine(3, 2 * rot_dim + 0) = BigFloat(1, prec);
    combine(3, 2 * rot_dim + 1) = BigFloat(1, prec);
    balance_columns(combine, dim - 1);

    std::vector<Matrix<BigFloat>> symbol_ops;
    symbol_ops.push_back(tensor_op(pa, rot_machine.op('a')));
    symbol_ops.push_back(tensor_op(pb, rot_machine.op('b')));
    Matrix<BigFloat> left = tensor_op(pleft, rot_machine.left_op());
    Matrix<BigFloat> right = matmul(combine, tensor_op(pright, rot_machine.right_op()));

    AfaMachine<BigFloat> machine("ab", std::move(symbol_ops), std::move(left), std::move(right), 0,
                                 {0}, NumericField::high_precision_float(prec));

    unsigned long long max_a = 1;
    for (int i = 0; i <= n_max; ++i) max_a *= 8ULL;

    const double bound = accumulated_angle_error_bound(n_max, guard);
    return CombinedMachine{std::move(machine), k,     oracle, n_max, guard, std::move(angle),
                           prec,               max_a, bound,  bound <= certification_slack()};
}

// Run with the input-length contract enforced: the truncated angle only
// supports inputs with at most 8^(n_max+1) a-symbols.
inline RunResult<BigFloat> run(const CombinedMachine& cm, std::string_view input,
                               const RunOptions<BigFloat>& options = {}) {
    unsigned long long a_count = 0;
    for (char c : input)
        if (c == 'a') ++a_count;
    if (a_count > cm.max_a_count)
        throw std::invalid_argument("run: input exceeds configured n_max");
    return afa::run(cm.machine, input, options);
}

// sin²α / (1 + 2k·mismatch): the acceptance probability implied by a final
// rotation angle α and a block mismatch sum.
inline BigFloat acceptance_from_angle(const BigFloat& alpha, long k, const mpz_class& mismatch) {
    const BigFloat s = sin(alpha);
    return s * s / to_bigfloat(mpz_class(1 + 2 * k * mismatch), alpha.prec());
}

// Analytic oracle for the combined machine: the accumulated angle is
// (a-count + 1) rotations plus the final quarter turn, all on the same
// truncated series the machine was built from.
inline BigFloat predicted_acceptance(std::string_view x, const LanguageOracle& oracle, long k,
                                     int terms, mpfr_prec_t prec) {
    const powereq::BlockDecomposition d = powereq::blocks(x);
    long long a_count = 0;
    for (long long c : d.counts) a_count += c;
    const TruncatedAngle angle = membership_angle(oracle, terms, prec);
    const BigFloat alpha = angle.value * (a_count + 1) + BigFloat::pi(prec) / 4L;
    return acceptance_from_angle(alpha, k, powereq::mismatch_sum(d));
}

}  // namespace afa::encoding
