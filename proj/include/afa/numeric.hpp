// Numeric backends for the simulator.
//
// Two scalar types sit behind one compile-time contract: Rational (GMP
// mpq_class, exact under +,-,*,/) for machines whose operators are integer
// matrices, and BigFloat (MPFR) for machines containing rotations. Generic
// code selects behavior through ScalarTraits; the runtime NumericField value
// records which backend a machine uses and the tolerance its invariants are
// checked at.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>
#include <stdexcept>

#include "afa/bigfloat.hpp"

namespace afa {

using Rational = mpq_class;

struct NumericField {
    enum class Kind { ExactRational, HighPrecisionFloat };

    Kind kind = Kind::ExactRational;
    mpfr_prec_t precision_bits = 0;  // meaningful only for the float backend

    static NumericField exact_rational() { return NumericField{Kind::ExactRational, 0}; }

    static NumericField high_precision_float(mpfr_prec_t bits) {
        if (bits < 64) throw std::invalid_argument("NumericField: precision_bits must be >= 64");
        return NumericField{Kind::HighPrecisionFloat, bits};
    }

    bool is_exact() const { return kind == Kind::ExactRational; }

    // Allowed drift of entry sums and column sums away from 1. Half the
    // mantissa is left as headroom for accumulated rotation error.
    double sum_tolerance() const {
        return is_exact() ? 0.0 : std::ldexp(1.0, -static_cast<int>(precision_bits / 2));
    }
};

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_exact = true;

    static bool is_zero(const Rational& v) { return mpq_sgn(v.get_mpq_t()) == 0; }

    static Rational abs_value(const Rational& v) {
        Rational r;
        mpq_abs(r.get_mpq_t(), v.get_mpq_t());
        return r;
    }

    static void set_zero(Rational& v) { mpq_set_si(v.get_mpq_t(), 0, 1); }

    // acc += a * x; scratch avoids a temporary allocation per call.
    static void fused_add_mul(Rational& acc, const Rational& a, const Rational& x, Rational& scratch) {
        mpq_mul(scratch.get_mpq_t(), a.get_mpq_t(), x.get_mpq_t());
        mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), scratch.get_mpq_t());
    }

    static double to_double(const Rational& v) { return v.get_d(); }
};

template <>
struct ScalarTraits<BigFloat> {
    static constexpr bool is_exact = false;

    static bool is_zero(const BigFloat& v) { return v.is_zero(); }

    static BigFloat abs_value(const BigFloat& v) { return abs(v); }

    static void set_zero(BigFloat& v) { mpfr_set_zero(v.raw(), 1); }

    static void fused_add_mul(BigFloat& acc, const BigFloat& a, const BigFloat& x, BigFloat&) {
        fma_acc(acc, a, x);
    }

    static double to_double(const BigFloat& v) { return v.to_double(); }
};

// gmpxx has no long long constructor.
inline mpz_class to_mpz(long long v) {
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max())
        return mpz_class(static_cast<long>(v));
    return mpz_class(std::to_string(v));
}

inline BigFloat to_bigfloat(const Rational& r, mpfr_prec_t prec) {
    BigFloat out = BigFloat::zero(prec);
    mpfr_set_q(out.raw(), r.get_mpq_t(), MPFR_RNDN);
    return out;
}

inline BigFloat to_bigfloat(const mpz_class& z, mpfr_prec_t prec) {
    BigFloat out = BigFloat::zero(prec);
    mpfr_set_z(out.raw(), z.get_mpz_t(), MPFR_RNDN);
    return out;
}

// Decimal rendering of an exact rational (rounded, for reports).
inline std::string rational_to_decimal(const Rational& r, int significant_digits = 25) {
    return to_bigfloat(r, 256).str(significant_digits);
}

}  // namespace afa
