#pragma once

#include <optional>
#include <vector>

#include "rdqm/errors.hpp"
#include "rdqm/rational.hpp"

namespace rdqm {

/// Shifted factorial (a)_n = a(a+1)...(a+n-1), empty product for n=0.
inline Rational poch(const Rational& a, long n) {
    Rational r(1);
    for (long j = 0; j < n; ++j) r *= a + Rational(j);
    return r;
}

/// q-shifted factorial (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}).
inline Rational qpoch(const Rational& a, const Rational& q, long n) {
    Rational r(1), p(1);
    for (long j = 0; j < n; ++j) {
        r *= Rational(1) - a * p;
        p *= q;
    }
    return r;
}

/// Exact check of (a;1/q)_n = (-a)^n q^{-n(n-1)/2} (1/a;q)_n.
inline bool qpoch_inverse_base_identity_check(const Rational& a, const Rational& q, long n) {
    if (a.is_zero() || q.is_zero()) throw InvalidInput("identity requires a != 0 and q != 0");
    Rational lhs = qpoch(a, q.inverse(), n);
    Rational rhs = (-a).pow(n) * q.pow(-n * (n - 1) / 2) * qpoch(a.inverse(), q, n);
    return lhs == rhs;
}

/// A terminating (basic) hypergeometric sum. With `base` set this is
/// r phi s with the (-1)^{(1+s-r)n} q^{(1+s-r)n(n-1)/2} convention factor;
/// without it the ordinary r F s.
struct SeriesSpec {
    std::vector<Rational> numerator_params;
    std::vector<Rational> denominator_params;
    std::optional<Rational> base;
    Rational argument;
    long termination_degree = 0;
};

inline SeriesSpec hyper_f(std::vector<Rational> num, std::vector<Rational> den,
                          Rational z, long degree) {
    return SeriesSpec{std::move(num), std::move(den), std::nullopt, std::move(z), degree};
}

inline SeriesSpec hyper_phi(std::vector<Rational> num, std::vector<Rational> den,
                            Rational q, Rational z, long degree) {
    return SeriesSpec{std::move(num), std::move(den), std::move(q), std::move(z), degree};
}

/// Evaluate the finite sum exactly. A vanishing denominator factor at any
/// used order is a pole, not a removable limit.
inline Rational hyper_terminating(const SeriesSpec& spec) {
    if (spec.termination_degree < 0) throw InvalidInput("negative termination degree");
    const bool qcase = spec.base.has_value();
    if (qcase && (spec.base->is_zero() || *spec.base == Rational(1)))
        throw InvalidInput("series base must satisfy q != 0, 1");
    const long r = static_cast<long>(spec.numerator_params.size());
    const long s = static_cast<long>(spec.denominator_params.size());
    const long e = 1 + s - r;

    Rational total(0);
    Rational term(1); // running product of all k-dependent factors
    Rational qk1(1);  // q^{k-1} for the q-case
    for (long k = 0; k <= spec.termination_degree; ++k) {
        if (k > 0) {
            if (qcase) {
                const Rational& q = *spec.base;
                for (const Rational& a : spec.numerator_params)
                    term *= Rational(1) - a * qk1;
                for (const Rational& b : spec.denominator_params) {
                    Rational f = Rational(1) - b * qk1;
                    if (f.is_zero())
                        throw PoleInSeries("series denominator (" + b.str() + ";q)_" +
                                               std::to_string(k) + " vanished",
                                           b.str(), k);
                    term /= f;
                }
                Rational fq = Rational(1) - q.pow(k);
                if (fq.is_zero()) throw PoleInSeries("(q;q)_k vanished", "q", k);
                term /= fq;
                if (e != 0) {
                    if (e % 2 != 0) term = -term;
                    term *= qk1.pow(e);
                }
                term *= spec.argument;
                qk1 *= q;
            } else {
                for (const Rational& a : spec.numerator_params)
                    term *= a + Rational(k - 1);
                for (const Rational& b : spec.denominator_params) {
                    Rational f = b + Rational(k - 1);
                    if (f.is_zero())
                        throw PoleInSeries("series denominator (" + b.str() + ")_" +
                                               std::to_string(k) + " vanished",
                                           b.str(), k);
                    term /= f;
                }
                term /= Rational(k);
                term *= spec.argument;
            }
        }
        total += term;
    }
    return total;
}

} // namespace rdqm
