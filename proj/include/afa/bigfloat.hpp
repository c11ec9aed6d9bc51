// Arbitrary-precision binary floating point backed by MPFR.
//
// Value semantics: a copy replicates both the precision and the bits of the
// source. Binary operations round once, into the wider operand's precision.
// That makes the type safe to use in generic numeric code: intermediate
// results never silently drop below the precision of their inputs.

#pragma once

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace afa {

class BigFloat {
public:
    static constexpr mpfr_prec_t default_precision = 128;

    BigFloat() {
        mpfr_init2(v_, default_precision);
        mpfr_set_zero(v_, 1);
    }

    // mpfr_prec_t aliases long, so a precision-only constructor would be
    // ambiguous with the value constructors; use a named factory instead.
    static BigFloat zero(mpfr_prec_t prec) {
        BigFloat r;
        mpfr_set_prec(r.v_, check_prec(prec));
        mpfr_set_zero(r.v_, 1);
        return r;
    }

    BigFloat(long value, mpfr_prec_t prec = default_precision) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_si(v_, value, MPFR_RNDN);
    }

    BigFloat(int value, mpfr_prec_t prec = default_precision)
        : BigFloat(static_cast<long>(value), prec) {}

    BigFloat(double value, mpfr_prec_t prec = default_precision) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_d(v_, value, MPFR_RNDN);
    }

    // Parses a decimal literal, e.g. BigFloat("0.98", 128).
    BigFloat(const std::string& decimal, mpfr_prec_t prec) {
        mpfr_init2(v_, check_prec(prec));
        if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
            mpfr_clear(v_);
            throw std::invalid_argument("BigFloat: unparsable decimal literal '" + decimal + "'");
        }
    }

    BigFloat(const BigFloat& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }

    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& other) noexcept {
        if (this != &other) mpfr_swap(v_, other.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    // Widens the precision in place; the stored value is preserved exactly.
    void ensure_prec(mpfr_prec_t prec) {
        if (mpfr_get_prec(v_) < prec) mpfr_prec_round(v_, prec, MPFR_RNDN);
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Decimal rendering with the given number of significant digits.
    std::string str(int significant_digits = 25) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", significant_digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r = zero(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r = zero(join_prec(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r = zero(join_prec(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r = zero(join_prec(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r = zero(join_prec(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, long b) {
        BigFloat r = zero(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, long b) {
        BigFloat r = zero(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r = zero(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& b) {
        ensure_prec(b.prec());
        mpfr_add(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& b) {
        ensure_prec(b.prec());
        mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& b) {
        ensure_prec(b.prec());
        mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    // acc += a * x with a single rounding step.
    friend void fma_acc(BigFloat& acc, const BigFloat& a, const BigFloat& x) {
        acc.ensure_prec(std::max(a.prec(), x.prec()));
        mpfr_fma(acc.v_, a.v_, x.v_, acc.v_, MPFR_RNDN);
    }

    friend BigFloat sin(const BigFloat& a) {
        BigFloat r = zero(a.prec());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cos(const BigFloat& a) {
        BigFloat r = zero(a.prec());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat abs(const BigFloat& a) {
        BigFloat r = zero(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r = zero(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

private:
    static mpfr_prec_t check_prec(mpfr_prec_t prec) {
        if (prec < MPFR_PREC_MIN) throw std::invalid_argument("BigFloat: precision too small");
        return prec;
    }
    static mpfr_prec_t join_prec(const BigFloat& a, const BigFloat& b) {
        return std::max(a.prec(), b.prec());
    }

    mpfr_t v_;
};

}  // namespace afa
