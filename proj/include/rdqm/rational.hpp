#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>

#include "rdqm/errors.hpp"

namespace rdqm {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Thin wrapper over GMP's mpq layer; every constructor
/// canonicalizes, so the invariants hold after any sequence of operations.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    static Rational parse(std::string_view text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }
    Rational inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        mpq_class r;
        mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
        return Rational(r, already_canonical{});
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_), already_canonical{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_), already_canonical{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_), already_canonical{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZero("rational division by zero");
        return Rational(mpq_class(a.v_ / b.v_), already_canonical{});
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e < 0) throw DivisionByZero("0 raised to a negative power");
            return Rational(0);
        }
        mpz_class n, d;
        unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), mag);
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), mag);
        if (e < 0) std::swap(n, d);
        return Rational(n, d); // canonicalizes the sign of d
    }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    double to_double() const { return v_.get_d(); }
    const mpq_class& mpq() const { return v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}
    mpq_class v_;
};

inline Rational rat(long num, long den) { return Rational(num, den); }

inline Rational Rational::parse(std::string_view text) {
    auto bad = [&] { throw InvalidInput("malformed rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    std::string_view body = text;
    size_t slash = body.find('/');
    auto digits_ok = [](std::string_view s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto to_mpz = [](std::string_view s) {
        bool neg = false;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            s.remove_prefix(1);
        }
        mpz_class v{std::string(s), 10};
        return neg ? mpz_class(-v) : v;
    };
    if (slash == std::string_view::npos) {
        if (!digits_ok(body)) bad();
        return Rational(to_mpz(body), mpz_class(1));
    }
    std::string_view ns = body.substr(0, slash);
    std::string_view ds = body.substr(slash + 1);
    if (!digits_ok(ns) || !digits_ok(ds)) bad();
    mpz_class n = to_mpz(ns), d = to_mpz(ds);
    if (d == 0) throw InvalidInput("rational literal with zero denominator: '" + std::string(text) + "'");
    return Rational(n, d);
}

} // namespace rdqm
