#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdqm/errors.hpp"
#include "rdqm/qseries.hpp"
#include "rdqm/rational.hpp"

namespace rdqm {

/// The nineteen discrete orthogonal polynomial families.
enum class Family {
    R,     // Racah
    qR,    // q-Racah
    Ha,    // Hahn
    dHa,   // dual Hahn
    K,     // Krawtchouk
    qHa,   // q-Hahn
    dqHa,  // dual q-Hahn
    qqK,   // quantum q-Krawtchouk
    qK,    // q-Krawtchouk
    dqK,   // dual q-Krawtchouk
    aqK,   // affine q-Krawtchouk
    M,     // Meixner
    C,     // Charlier
    lqJ,   // little q-Jacobi
    qM,    // q-Meixner
    lqL,   // little q-Laguerre / Wall
    ASCII, // Al-Salam-Carlitz II
    qB,    // q-Bessel (alternative q-Charlier)
    qC,    // q-Charlier
};

inline const std::vector<Family>& all_families() {
    static const std::vector<Family> fams = {
        Family::R, Family::qR, Family::Ha, Family::dHa, Family::K,
        Family::qHa, Family::dqHa, Family::qqK, Family::qK, Family::dqK,
        Family::aqK, Family::M, Family::C, Family::lqJ, Family::qM,
        Family::lqL, Family::ASCII, Family::qB, Family::qC};
    return fams;
}

struct FamilyMeta {
    const char* token;    // lowercase CLI token
    bool is_q;
    bool finite;
    std::vector<long> delta;
    int n_slot;                          // lam index carrying the lattice size, -1 if none
    std::vector<const char*> params;     // user-supplied parameter names (N separate)
};

inline const FamilyMeta& meta(Family f) {
    static const std::map<Family, FamilyMeta> m = {
        {Family::R,     {"r",     false, true,  {1, 1, 1, 1}, 2, {"a", "b", "d"}}},
        {Family::qR,    {"qr",    true,  true,  {1, 1, 1, 1}, 2, {"a", "b", "d"}}},
        {Family::Ha,    {"ha",    false, true,  {1, 1, -1},   2, {"a", "b"}}},
        {Family::dHa,   {"dha",   false, true,  {1, 0, -1},   2, {"a", "b"}}},
        {Family::K,     {"k",     false, true,  {0, -1},      1, {"p"}}},
        {Family::qHa,   {"qha",   true,  true,  {1, 1, -1},   2, {"a", "b"}}},
        {Family::dqHa,  {"dqha",  true,  true,  {1, 0, -1},   2, {"a", "b"}}},
        {Family::qqK,   {"qqk",   true,  true,  {1, -1},      1, {"p"}}},
        {Family::qK,    {"qk",    true,  true,  {2, -1},      1, {"p"}}},
        {Family::dqK,   {"dqk",   true,  true,  {0, -1},      1, {"c"}}},
        {Family::aqK,   {"aqk",   true,  true,  {1, -1},      1, {"p"}}},
        {Family::M,     {"m",     false, false, {1, 0},       -1, {"beta", "c"}}},
        {Family::C,     {"c",     false, false, {0},          -1, {"a"}}},
        {Family::lqJ,   {"lqj",   true,  false, {1, 1},       -1, {"a", "b"}}},
        {Family::qM,    {"qm",    true,  false, {1, -1},      -1, {"b", "c"}}},
        {Family::lqL,   {"lql",   true,  false, {1},          -1, {"a"}}},
        {Family::ASCII, {"ascii", true,  false, {0},          -1, {"a"}}},
        {Family::qB,    {"qb",    true,  false, {2},          -1, {"a"}}},
        {Family::qC,    {"qc",    true,  false, {-1},         -1, {"a"}}},
    };
    return m.at(f);
}

inline Family family_from_token(const std::string& token) {
    for (Family f : all_families())
        if (token == meta(f).token) return f;
    throw InvalidInput("unknown family token: '" + token + "'");
}

/// A family member at a concrete rational parameter point. For q-families the
/// entries of `lam` are the multiplicative parameter values (so parameter
/// shifts stay exact); for the others they are the parameters themselves.
/// `N` tracks the lattice size through shifts for finite families; twisted or
/// heavily shifted sets used purely for polynomial evaluation may carry a
/// negative or meaningless N.
struct ParamSet {
    Family family = Family::K;
    std::vector<Rational> lam;
    Rational q;   // base; unused for classical families
    long N = -1;
};

/// lam -> lam + k*delta (multiplicative for q-families).
inline ParamSet shift_params(const ParamSet& ps, long k) {
    const FamilyMeta& fm = meta(ps.family);
    ParamSet out = ps;
    for (size_t i = 0; i < out.lam.size(); ++i) {
        if (fm.is_q)
            out.lam[i] = out.lam[i] * ps.q.pow(k * fm.delta[i]);
        else
            out.lam[i] = out.lam[i] + Rational(k * fm.delta[i]);
    }
    if (fm.finite) out.N = ps.N - k;
    return out;
}

namespace detail {

inline Rational guarded_div(const Rational& num, const Rational& den, const char* what) {
    if (den.is_zero()) throw EvaluationPole(std::string(what) + ": vanishing denominator");
    return num / den;
}

inline Rational qp(const ParamSet& ps, long e) { return ps.q.pow(e); }

} // namespace detail

/// d-tilde for the Racah / q-Racah pair.
inline Rational dtilde(const ParamSet& ps) {
    const auto& l = ps.lam;
    switch (ps.family) {
        case Family::R: return l[0] + l[1] + l[2] - l[3] - Rational(1);
        case Family::qR: return l[0] * l[1] * l[2] / (l[3] * ps.q);
        default: throw InvalidInput("dtilde defined only for r and qr");
    }
}

/// Potential function B(x).
inline Rational fam_B(const ParamSet& ps, long x) {
    using detail::guarded_div;
    using detail::qp;
    const auto& l = ps.lam;
    const Rational X(x);
    switch (ps.family) {
        case Family::R:
            return guarded_div(-(X + l[0]) * (X + l[1]) * (X + l[2]) * (X + l[3]),
                               (Rational(2 * x) + l[3]) * (Rational(2 * x + 1) + l[3]), "B");
        case Family::qR:
            return guarded_div(-(Rational(1) - l[0] * qp(ps, x)) * (Rational(1) - l[1] * qp(ps, x)) *
                                   (Rational(1) - l[2] * qp(ps, x)) * (Rational(1) - l[3] * qp(ps, x)),
                               (Rational(1) - l[3] * qp(ps, 2 * x)) * (Rational(1) - l[3] * qp(ps, 2 * x + 1)),
                               "B");
        case Family::Ha: return (X + l[0]) * (l[2] - X);
        case Family::dHa:
            return guarded_div((X + l[0]) * (X + l[0] + l[1] - Rational(1)) * (l[2] - X),
                               (Rational(2 * x - 1) + l[0] + l[1]) * (Rational(2 * x) + l[0] + l[1]), "B");
        case Family::K: return l[0] * (l[1] - X);
        case Family::qHa:
            return (Rational(1) - l[0] * qp(ps, x)) * (detail::guarded_div(qp(ps, x), l[2], "B") - Rational(1));
        case Family::dqHa: {
            Rational ab = l[0] * l[1];
            return guarded_div((detail::guarded_div(qp(ps, x), l[2], "B") - Rational(1)) *
                                   (Rational(1) - l[0] * qp(ps, x)) * (Rational(1) - ab * qp(ps, x - 1)),
                               (Rational(1) - ab * qp(ps, 2 * x - 1)) * (Rational(1) - ab * qp(ps, 2 * x)), "B");
        }
        case Family::qqK:
            return detail::guarded_div(qp(ps, x), l[0], "B") * (detail::guarded_div(qp(ps, x), l[1], "B") - Rational(1));
        case Family::qK:
            return detail::guarded_div(qp(ps, x), l[1], "B") - Rational(1);
        case Family::dqK: {
            Rational cq = detail::guarded_div(l[0], l[1], "B"); // c q^{-N}
            return guarded_div((detail::guarded_div(qp(ps, x), l[1], "B") - Rational(1)) *
                                   (Rational(1) - cq * qp(ps, x)),
                               (Rational(1) - cq * qp(ps, 2 * x)) * (Rational(1) - cq * qp(ps, 2 * x + 1)), "B");
        }
        case Family::aqK:
            return (detail::guarded_div(qp(ps, x), l[1], "B") - Rational(1)) * (Rational(1) - l[0] * qp(ps, x + 1));
        case Family::M:
            return guarded_div(l[1] * (X + l[0]), Rational(1) - l[1], "B");
        case Family::C: return l[0];
        case Family::lqJ: return l[0] * (qp(ps, -x) - l[1] * ps.q);
        case Family::qM: return l[1] * qp(ps, x) * (Rational(1) - l[0] * qp(ps, x + 1));
        case Family::lqL: return l[0] * qp(ps, -x);
        case Family::ASCII: return l[0] * qp(ps, 2 * x + 1);
        case Family::qB: return l[0];
        case Family::qC: return l[0] * qp(ps, x);
    }
    throw InvalidInput("unreachable family");
}

/// Potential function D(x).
inline Rational fam_D(const ParamSet& ps, long x) {
    using detail::guarded_div;
    using detail::qp;
    const auto& l = ps.lam;
    const Rational X(x);
    switch (ps.family) {
        case Family::R:
            return guarded_div(-(X + l[3] - l[0]) * (X + l[3] - l[1]) * (X + l[3] - l[2]) * X,
                               (Rational(2 * x - 1) + l[3]) * (Rational(2 * x) + l[3]), "D");
        case Family::qR: {
            Rational dt = dtilde(ps);
            return guarded_div(-dt * (Rational(1) - guarded_div(l[3], l[0], "D") * qp(ps, x)) *
                                   (Rational(1) - guarded_div(l[3], l[1], "D") * qp(ps, x)) *
                                   (Rational(1) - guarded_div(l[3], l[2], "D") * qp(ps, x)) *
                                   (Rational(1) - qp(ps, x)),
                               (Rational(1) - l[3] * qp(ps, 2 * x - 1)) * (Rational(1) - l[3] * qp(ps, 2 * x)),
                               "D");
        }
        case Family::Ha: return X * (l[1] + l[2] - X);
        case Family::dHa:
            return guarded_div(X * (X + l[1] - Rational(1)) * (X + l[0] + l[1] + l[2] - Rational(1)),
                               (Rational(2 * x - 2) + l[0] + l[1]) * (Rational(2 * x - 1) + l[0] + l[1]), "D");
        case Family::K: return (Rational(1) - l[0]) * X;
        case Family::qHa:
            return guarded_div(l[0], ps.q, "D") * (Rational(1) - qp(ps, x)) *
                   (detail::guarded_div(qp(ps, x), l[2], "D") - l[1]);
        case Family::dqHa: {
            Rational ab = l[0] * l[1];
            return guarded_div(l[0] * qp(ps, x - 1) / l[2] * (Rational(1) - qp(ps, x)) *
                                   (Rational(1) - ab * l[2] * qp(ps, x - 1)) * (Rational(1) - l[1] * qp(ps, x - 1)),
                               (Rational(1) - ab * qp(ps, 2 * x - 2)) * (Rational(1) - ab * qp(ps, 2 * x - 1)), "D");
        }
        case Family::qqK:
            return (Rational(1) - qp(ps, x)) * (Rational(1) - guarded_div(qp(ps, x - 1), l[0] * l[1], "D"));
        case Family::qK: return l[0] * (Rational(1) - qp(ps, x));
        case Family::dqK: {
            Rational cq = detail::guarded_div(l[0], l[1], "D"); // c q^{-N}
            return guarded_div(-cq * guarded_div(qp(ps, 2 * x - 1), l[1], "D") *
                                   (Rational(1) - qp(ps, x)) * (Rational(1) - l[0] * qp(ps, x)),
                               (Rational(1) - cq * qp(ps, 2 * x - 1)) * (Rational(1) - cq * qp(ps, 2 * x)), "D");
        }
        case Family::aqK:
            return l[0] * detail::guarded_div(qp(ps, x), l[1], "D") * (Rational(1) - qp(ps, x));
        case Family::M: return guarded_div(X, Rational(1) - l[1], "D");
        case Family::C: return X;
        case Family::lqJ: return qp(ps, -x) - Rational(1);
        case Family::qM: return (Rational(1) - qp(ps, x)) * (Rational(1) + l[0] * l[1] * qp(ps, x));
        case Family::lqL: return qp(ps, -x) - Rational(1);
        case Family::ASCII: return (Rational(1) - qp(ps, x)) * (Rational(1) - l[0] * qp(ps, x));
        case Family::qB: return qp(ps, -x) - Rational(1);
        case Family::qC: return Rational(1) - qp(ps, x);
    }
    throw InvalidInput("unreachable family");
}

/// Eigenvalue E_n; negative n is meaningful (pseudo virtual energies).
inline Rational eval_energy(const ParamSet& ps, long n) {
    using detail::qp;
    const auto& l = ps.lam;
    switch (ps.family) {
        case Family::R: return Rational(n) * (Rational(n) + dtilde(ps));
        case Family::qR: return (qp(ps, -n) - Rational(1)) * (Rational(1) - dtilde(ps) * qp(ps, n));
        case Family::Ha: return Rational(n) * (Rational(n) + l[0] + l[1] - Rational(1));
        case Family::dHa: return Rational(n);
        case Family::K: return Rational(n);
        case Family::qHa: return (qp(ps, -n) - Rational(1)) * (Rational(1) - l[0] * l[1] * qp(ps, n - 1));
        case Family::dqHa: return qp(ps, -n) - Rational(1);
        case Family::qqK: return Rational(1) - qp(ps, n);
        case Family::qK: return (qp(ps, -n) - Rational(1)) * (Rational(1) + l[0] * qp(ps, n));
        case Family::dqK: return qp(ps, -n) - Rational(1);
        case Family::aqK: return qp(ps, -n) - Rational(1);
        case Family::M: return Rational(n);
        case Family::C: return Rational(n);
        case Family::lqJ: return (qp(ps, -n) - Rational(1)) * (Rational(1) - l[0] * l[1] * qp(ps, n + 1));
        case Family::qM: return Rational(1) - qp(ps, n);
        case Family::lqL: return qp(ps, -n) - Rational(1);
        case Family::ASCII: return Rational(1) - qp(ps, n);
        case Family::qB: return (qp(ps, -n) - Rational(1)) * (Rational(1) + l[0] * qp(ps, n));
        case Family::qC: return Rational(1) - qp(ps, n);
    }
    throw InvalidInput("unreachable family");
}

/// Sinusoidal coordinate eta(x), eta(0) = 0.
inline Rational fam_eta(const ParamSet& ps, long x) {
    using detail::qp;
    const auto& l = ps.lam;
    const Rational X(x);
    switch (ps.family) {
        case Family::R: return X * (X + l[3]);
        case Family::qR: return (qp(ps, -x) - Rational(1)) * (Rational(1) - l[3] * qp(ps, x));
        case Family::Ha: return X;
        case Family::dHa: return X * (X + l[0] + l[1] - Rational(1));
        case Family::K: return X;
        case Family::qHa: return qp(ps, -x) - Rational(1);
        case Family::dqHa: return (qp(ps, -x) - Rational(1)) * (Rational(1) - l[0] * l[1] * qp(ps, x - 1));
        case Family::qqK: return qp(ps, -x) - Rational(1);
        case Family::qK: return qp(ps, -x) - Rational(1);
        case Family::dqK:
            return (qp(ps, -x) - Rational(1)) *
                   (Rational(1) - detail::guarded_div(l[0], l[1], "eta") * qp(ps, x));
        case Family::aqK: return qp(ps, -x) - Rational(1);
        case Family::M: return X;
        case Family::C: return X;
        case Family::lqJ: return Rational(1) - qp(ps, x);
        case Family::qM: return qp(ps, -x) - Rational(1);
        case Family::lqL: return Rational(1) - qp(ps, x);
        case Family::ASCII: return qp(ps, -x) - Rational(1);
        case Family::qB: return Rational(1) - qp(ps, x);
        case Family::qC: return qp(ps, -x) - Rational(1);
    }
    throw InvalidInput("unreachable family");
}

/// varphi(x) = (eta(x+1) - eta(x)) / eta(1).
inline Rational fam_varphi(const ParamSet& ps, long x) {
    Rational e1 = fam_eta(ps, 1);
    if (e1.is_zero()) throw EvaluationPole("varphi: eta(1) vanished");
    return (fam_eta(ps, x + 1) - fam_eta(ps, x)) / e1;
}

/// kappa of the shape-invariance relation.
inline Rational fam_kappa(const ParamSet& ps) {
    switch (ps.family) {
        case Family::R: case Family::Ha: case Family::dHa: case Family::K:
        case Family::M: case Family::C:
            return Rational(1);
        case Family::qqK: case Family::qM: case Family::ASCII: case Family::qC:
            return ps.q;
        default:
            return ps.q.inverse();
    }
}

/// The terminating series for P_n(eta(x)), exact at integer x.
inline SeriesSpec polynomial_series(const ParamSet& ps, long n, long x) {
    using detail::qp;
    const auto& l = ps.lam;
    const Rational X(x);
    const Rational one(1);
    switch (ps.family) {
        case Family::R:
            return hyper_f({Rational(-n), Rational(n) + dtilde(ps), -X, X + l[3]},
                           {l[0], l[1], l[2]}, one, n);
        case Family::qR:
            return hyper_phi({qp(ps, -n), dtilde(ps) * qp(ps, n), qp(ps, -x), l[3] * qp(ps, x)},
                             {l[0], l[1], l[2]}, ps.q, ps.q, n);
        case Family::Ha:
            return hyper_f({Rational(-n), Rational(n) + l[0] + l[1] - one, -X}, {l[0], -l[2]}, one, n);
        case Family::dHa:
            return hyper_f({Rational(-n), X + l[0] + l[1] - one, -X}, {l[0], -l[2]}, one, n);
        case Family::K:
            return hyper_f({Rational(-n), -X}, {-l[1]}, l[0].inverse(), n);
        case Family::qHa:
            return hyper_phi({qp(ps, -n), l[0] * l[1] * qp(ps, n - 1), qp(ps, -x)},
                             {l[0], l[2].inverse()}, ps.q, ps.q, n);
        case Family::dqHa:
            return hyper_phi({qp(ps, -n), l[0] * l[1] * qp(ps, x - 1), qp(ps, -x)},
                             {l[0], l[2].inverse()}, ps.q, ps.q, n);
        case Family::qqK:
            return hyper_phi({qp(ps, -n), qp(ps, -x)}, {l[1].inverse()}, ps.q, l[0] * qp(ps, n + 1), n);
        case Family::qK:
            return hyper_phi({qp(ps, -n), qp(ps, -x), -l[0] * qp(ps, n)},
                             {l[1].inverse(), Rational(0)}, ps.q, ps.q, n);
        case Family::dqK:
            return hyper_phi({qp(ps, -n), qp(ps, -x), l[0] * qp(ps, x) / l[1]},
                             {l[1].inverse(), Rational(0)}, ps.q, ps.q, n);
        case Family::aqK:
            return hyper_phi({qp(ps, -n), qp(ps, -x), Rational(0)},
                             {l[0] * ps.q, l[1].inverse()}, ps.q, ps.q, n);
        case Family::M:
            return hyper_f({Rational(-n), -X}, {l[0]}, one - l[1].inverse(), n);
        case Family::C:
            return hyper_f({Rational(-n), -X}, {}, -l[0].inverse(), n);
        case Family::lqJ:
            return hyper_phi({qp(ps, -n), l[0] * l[1] * qp(ps, n + 1), qp(ps, -x)},
                             {l[1] * ps.q}, ps.q, qp(ps, x) / l[0], n);
        case Family::qM:
            return hyper_phi({qp(ps, -n), qp(ps, -x)}, {l[0] * ps.q}, ps.q, -qp(ps, n + 1) / l[1], n);
        case Family::lqL:
            return hyper_phi({qp(ps, -n), qp(ps, -x)}, {}, ps.q, qp(ps, x) / l[0], n);
        case Family::ASCII:
            return hyper_phi({qp(ps, -n), qp(ps, -x)}, {}, ps.q, qp(ps, n) / l[0], n);
        case Family::qB:
            return hyper_phi({qp(ps, -n), -l[0] * qp(ps, n), qp(ps, -x)}, {}, ps.q, -qp(ps, x) / l[0], n);
        case Family::qC:
            return hyper_phi({qp(ps, -n), qp(ps, -x)}, {Rational(0)}, ps.q, -qp(ps, n + 1) / l[0], n);
    }
    throw InvalidInput("unreachable family");
}

/// P_n(eta(x)); exact, defined for any integer x and n >= 0.
inline Rational eval_polynomial(const ParamSet& ps, long n, long x) {
    if (n < 0) throw InvalidInput("polynomial degree must be non-negative");
    try {
        return hyper_terminating(polynomial_series(ps, n, x));
    } catch (const PoleInSeries& p) {
        throw PoleInSeries(std::string(meta(ps.family).token) + ": " + p.what(), p.parameter, p.order);
    }
}

/// Ground-state weight, product form: prod_{y<x} B(y)/D(y+1), x >= 0.
inline Rational phi0sq_product(const ParamSet& ps, long x) {
    if (x < 0) throw InvalidInput("phi0^2 defined for x >= 0");
    Rational r(1);
    for (long y = 0; y < x; ++y) {
        Rational d = fam_D(ps, y + 1);
        if (d.is_zero()) throw EvaluationPole("phi0^2: D vanished inside the lattice");
        r *= fam_B(ps, y) / d;
    }
    return r;
}

namespace detail {

inline Rational binom(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

} // namespace detail

/// Ground-state weight in closed form (finite families only); equals the
/// product form exactly, which the tests assert.
inline Rational phi0sq_closed(const ParamSet& ps, long x) {
    using detail::qp;
    const auto& l = ps.lam;
    const long N = ps.N;
    const Rational one(1);
    switch (ps.family) {
        case Family::R: {
            Rational d = l[3];
            return poch(l[0], x) * poch(l[1], x) * poch(l[2], x) * poch(d, x) /
                   (poch(d - l[0] + one, x) * poch(d - l[1] + one, x) * poch(d - l[2] + one, x) *
                    poch(one, x)) *
                   (Rational(2 * x) + d) / d;
        }
        case Family::qR: {
            Rational d = l[3], q = ps.q, dt = dtilde(ps);
            return qpoch(l[0], q, x) * qpoch(l[1], q, x) * qpoch(l[2], q, x) * qpoch(d, q, x) /
                   (qpoch(d * q / l[0], q, x) * qpoch(d * q / l[1], q, x) * qpoch(d * q / l[2], q, x) *
                    qpoch(q, q, x) * dt.pow(x)) *
                   (one - d * qp(ps, 2 * x)) / (one - d);
        }
        case Family::Ha:
            return detail::binom(N, x) * poch(l[0], x) / poch(l[1] + Rational(N - x), x);
        case Family::dHa: {
            Rational ab1 = l[0] + l[1] - one;
            return detail::binom(N, x) * poch(l[0], x) * poch(ab1, x) /
                   (poch(l[1], x) * poch(l[0] + l[1] + Rational(N), x)) *
                   (Rational(2 * x) + ab1) / ab1;
        }
        case Family::K:
            return detail::binom(N, x) * (l[0] / (one - l[0])).pow(x);
        case Family::qHa: {
            Rational q = ps.q;
            return qpoch(l[0], q, x) * qpoch(qp(ps, N - x + 1), q, x) /
                   (l[0].pow(x) * qpoch(q, q, x) * qpoch(l[1] * qp(ps, N - x), q, x));
        }
        case Family::dqHa: {
            Rational q = ps.q, ab = l[0] * l[1];
            return qpoch(qp(ps, N - x + 1), q, x) * qpoch(l[0], q, x) * qpoch(ab / q, q, x) *
                   (one - ab * qp(ps, 2 * x - 1)) /
                   (l[0].pow(x) * qpoch(q, q, x) * qpoch(ab * qp(ps, N), q, x) * qpoch(l[1], q, x) *
                    (one - ab / q));
        }
        case Family::qqK: {
            Rational q = ps.q;
            Rational sign = (x % 2 == 0) ? one : Rational(-1);
            return sign * qp(ps, x * (x - 1) / 2) * qpoch(qp(ps, N - x + 1), q, x) /
                   (qpoch(q, q, x) * qpoch(l[0] * qp(ps, N - x + 1), q, x));
        }
        case Family::qK:
            return qp(ps, x * (x - 1) / 2 - N * x) * qpoch(qp(ps, N - x + 1), ps.q, x) /
                   (l[0].pow(x) * qpoch(ps.q, ps.q, x));
        case Family::dqK: {
            Rational q = ps.q, c = l[0];
            Rational cqN = c / l[1]; // c q^{-N}
            return qpoch(qp(ps, N - x + 1), q, x) * qpoch(cqN, q, x) * (one - cqN * qp(ps, 2 * x)) *
                   qp(ps, N * x - x * (x + 1) / 2) /
                   ((-c).pow(x) * qpoch(q, q, x) * qpoch(c * q, q, x) * (one - cqN));
        }
        case Family::aqK:
            return qpoch(qp(ps, N - x + 1), ps.q, x) * qpoch(l[0] * ps.q, ps.q, x) /
                   (l[0].pow(x) * qp(ps, x) * qpoch(ps.q, ps.q, x));
        default:
            throw InvalidInput("closed-form phi0^2 available for finite families only");
    }
}

/// Build a physical parameter point from named values. For q-families `qval`
/// must be in (0,1); finite families need N >= 1 and the lattice-size slot is
/// derived from it.
inline ParamSet make_params(Family f, const std::map<std::string, Rational>& vals,
                            long N = -1, std::optional<Rational> qval = std::nullopt) {
    const FamilyMeta& fm = meta(f);
    auto get = [&](const char* name) {
        auto it = vals.find(name);
        if (it == vals.end())
            throw InvalidInput(std::string("missing parameter '") + name + "' for family " + fm.token);
        return it->second;
    };
    for (const auto& [k, v] : vals) {
        bool known = false;
        for (const char* p : fm.params)
            if (k == p) known = true;
        if (!known && !(fm.is_q && k == "q"))
            throw InvalidInput("unknown parameter '" + k + "' for family " + std::string(fm.token));
    }
    ParamSet ps;
    ps.family = f;
    if (fm.is_q) {
        auto it = vals.find("q");
        if (it != vals.end())
            ps.q = it->second;
        else if (qval)
            ps.q = *qval;
        else
            throw InvalidInput("q-family requires parameter q");
        if (!(Rational(0) < ps.q && ps.q < Rational(1)))
            throw InvalidInput("q must satisfy 0 < q < 1");
    }
    if (fm.finite) {
        if (N < 1) throw InvalidInput("finite family requires N >= 1");
        ps.N = N;
    }
    switch (f) {
        case Family::R:
            ps.lam = {get("a"), get("b"), Rational(-N), get("d")};
            break;
        case Family::qR:
            ps.lam = {get("a"), get("b"), ps.q.pow(-N), get("d")};
            break;
        case Family::Ha: case Family::dHa:
            ps.lam = {get("a"), get("b"), Rational(N)};
            break;
        case Family::K:
            ps.lam = {get("p"), Rational(N)};
            break;
        case Family::qHa: case Family::dqHa:
            ps.lam = {get("a"), get("b"), ps.q.pow(N)};
            break;
        case Family::qqK: case Family::qK: case Family::aqK:
            ps.lam = {get("p"), ps.q.pow(N)};
            break;
        case Family::dqK:
            ps.lam = {get("c"), ps.q.pow(N)};
            break;
        case Family::M:
            ps.lam = {get("beta"), get("c")};
            break;
        case Family::C:
            ps.lam = {get("a")};
            break;
        case Family::lqJ:
            ps.lam = {get("a"), get("b")};
            break;
        case Family::qM:
            ps.lam = {get("b"), get("c")};
            break;
        case Family::lqL: case Family::ASCII: case Family::qB: case Family::qC:
            ps.lam = {get("a")};
            break;
    }
    return ps;
}

} // namespace rdqm
