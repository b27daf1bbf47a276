#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "rdqm/errors.hpp"
#include "rdqm/rational.hpp"

namespace rdqm {

/// Floating-point value at a configurable binary precision (default 256 bits).
/// Precision is a process-wide default sampled at construction; values carry
/// their own precision afterwards. Rounding is to nearest throughout.
class BigFloat {
public:
    static mpfr_prec_t& default_precision() {
        static mpfr_prec_t bits = 256;
        return bits;
    }
    static void set_default_precision(mpfr_prec_t bits) {
        if (bits < 16) throw InvalidInput("precision below 16 bits");
        default_precision() = bits;
    }

    BigFloat() { mpfr_init2(v_, default_precision()); mpfr_set_zero(v_, 1); }
    BigFloat(long n) { mpfr_init2(v_, default_precision()); mpfr_set_si(v_, n, MPFR_RNDN); }
    explicit BigFloat(const Rational& r) {
        mpfr_init2(v_, default_precision());
        mpfr_set_q(v_, r.mpq().get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    /// 2^e at the current default precision (exact).
    static BigFloat pow2(long e) {
        BigFloat r;
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binop(mpfr_add, a, b); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binop(mpfr_sub, a, b); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binop(mpfr_mul, a, b); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binop(mpfr_div, a, b); }
    BigFloat operator-() const {
        BigFloat r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    BigFloat abs() const {
        BigFloat r(*this);
        mpfr_abs(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        if (sign() < 0) throw InvalidParameters("square root of a negative value");
        BigFloat r(*this);
        mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str(int digits = 40) const {
        char buf[128];
        std::string fmt = "%." + std::to_string(digits) + "Re";
        mpfr_snprintf(buf, sizeof buf, fmt.c_str(), v_);
        return buf;
    }

    mpfr_srcptr raw() const { return v_; }

private:
    using mpfr_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static BigFloat binop(mpfr_fn fn, const BigFloat& a, const BigFloat& b) {
        BigFloat r;
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) { return x.abs(); }
inline BigFloat sqrt(const BigFloat& x) { return x.sqrt(); }

inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

} // namespace rdqm
