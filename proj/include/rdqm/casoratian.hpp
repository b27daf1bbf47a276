#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "rdqm/errors.hpp"
#include "rdqm/family.hpp"
#include "rdqm/linalg.hpp"
#include "rdqm/proportionality.hpp"
#include "rdqm/twist.hpp"

namespace rdqm {

/// Casorati determinant det(f_k(x+j-1))_{1<=j,k<=n}; empty product is 1.
inline Rational casoratian(const std::vector<std::function<Rational(long)>>& fs, long x) {
    const size_t n = fs.size();
    if (n == 0) return Rational(1);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k)
            m[j][k] = fs[k](x + static_cast<long>(j));
    return determinant(std::move(m));
}

/// Auxiliary normalizer: product over 1 <= j < k <= M of
/// (eta(x+k-1) - eta(x+j-1)) / eta(k-j). Equals 1 for M <= 1.
inline Rational varphi_m(const ParamSet& ps, long M, long x) {
    Rational r(1);
    for (long k = 1; k <= M; ++k)
        for (long j = 1; j < k; ++j) {
            Rational den = fam_eta(ps, k - j);
            if (den.is_zero())
                throw EvaluationPole("varphi_M: eta(" + std::to_string(k - j) + ") vanished");
            r *= (fam_eta(ps, x + k - 1) - fam_eta(ps, x + j - 1)) / den;
        }
    return r;
}

/// Index bookkeeping for one identity instance.
struct IndexSets {
    long M = 0;
    std::vector<long> D;       // ascending seed degrees d_1 < ... < d_M
    long calN = 0;             // >= max(D)
    std::vector<long> Dbar;    // ascending complementary degrees e_1 < ... < e_Nbar
    long Nbar = 0;             // calN + 1 - M
    long ellD = 0;             // sum d_j - M(M-1)/2
};

inline IndexSets build_index_sets(std::vector<long> D, long calN) {
    if (D.empty()) throw InvalidInput("index set D must be non-empty");
    std::sort(D.begin(), D.end());
    for (size_t i = 0; i + 1 < D.size(); ++i)
        if (D[i] == D[i + 1]) throw InvalidInput("index set D must have distinct entries");
    if (D.front() < 0) throw InvalidInput("index set D must be non-negative");
    if (calN < D.back()) throw InvalidInput("calN must be >= max(D)");
    IndexSets s;
    s.M = static_cast<long>(D.size());
    s.D = std::move(D);
    s.calN = calN;
    std::set<long> excluded;
    for (long d : s.D) excluded.insert(calN - d);
    for (long e = 0; e <= calN; ++e)
        if (!excluded.count(e)) s.Dbar.push_back(e);
    s.Nbar = calN + 1 - s.M;
    long sumd = 0;
    for (long d : s.D) sumd += d;
    s.ellD = sumd - s.M * (s.M - 1) / 2;
    return s;
}

struct IdentityInstance {
    ParamSet params;
    TwistId twist = TwistId::I;
    IndexSets idx;
};

/// Conservative degree bound: both sides are polynomials of degree <= L in x
/// (Laurent degree in q^x), so agreement with one ratio on 2L+2 pole-free
/// points proves the identity as functions.
inline long degree_bound(const IndexSets& idx) {
    long s = idx.M + idx.Nbar + 2;
    for (long d : idx.D) s += d;
    for (long e : idx.Dbar) s += e;
    return s;
}

/// Verify one Casoratian identity instance exactly. Grid points where a
/// normalizer vanishes or a series pole appears are skipped and logged.
inline ProportionalityReport verify_identity(const IdentityInstance& inst) {
    const ParamSet& ps = inst.params;
    const IndexSets& idx = inst.idx;
    const TwistEntry& tw = twist_entry(ps.family, inst.twist);
    ParamSet shifted = shift_params(ps, -(idx.calN + 1));

    std::vector<std::function<Rational(long)>> xi_fns, p_fns;
    for (long d : idx.D)
        xi_fns.push_back([&ps, &tw, d](long y) { return eval_xi(ps, tw, d, y); });
    for (long e : idx.Dbar)
        p_fns.push_back([shifted, e](long y) { return eval_polynomial(shifted, e, y); });

    const long need = 2 * degree_bound(idx) + 2;
    std::vector<Rational> lhs, rhs;
    std::vector<long> skipped;
    std::string last_pole;
    long x = -idx.M - 1;
    const long give_up = x + 8 * need + 64;
    while (static_cast<long>(lhs.size()) < need && x < give_up) {
        try {
            Rational phiL = varphi_m(ps, idx.M, x - idx.M);
            Rational phiR = varphi_m(shifted, idx.Nbar, x);
            if (phiL.is_zero() || phiR.is_zero()) {
                skipped.push_back(x);
                ++x;
                continue;
            }
            lhs.push_back(casoratian(xi_fns, x - idx.M) / phiL);
            rhs.push_back(casoratian(p_fns, x) / phiR);
        } catch (const PoleInSeries& p) {
            skipped.push_back(x);
            last_pole = p.what();
        } catch (const EvaluationPole& p) {
            skipped.push_back(x);
            last_pole = p.what();
        }
        ++x;
    }
    if (static_cast<long>(lhs.size()) < need)
        throw EvaluationPole(
            "identity grid could not reach the degree bound; the parameter point is degenerate" +
            (last_pole.empty() ? std::string() : " (" + last_pole + ")"));
    ProportionalityReport rep = fit_proportionality(lhs, rhs);
    rep.degenerate_points = std::move(skipped);
    return rep;
}

/// Leading coefficient of the degree-n member in eta, q-Racah data.
inline Rational leading_coefficient_cn(const ParamSet& ps, long n) {
    if (ps.family != Family::qR) throw InvalidInput("c_n closed form is q-Racah only");
    Rational num = qpoch(dtilde(ps) * ps.q.pow(n), ps.q, n);
    Rational den = qpoch(ps.lam[0], ps.q, n) * qpoch(ps.lam[1], ps.q, n) * qpoch(ps.lam[2], ps.q, n);
    if (den.is_zero()) throw EvaluationPole("c_n: vanishing Pochhammer denominator");
    return num / den;
}

/// Top coefficient of a polynomial in eta from n+1 exact samples (Newton
/// divided differences over the points (eta(x_i), p(x_i))).
inline Rational top_coefficient_in_eta(const ParamSet& ps, long degree,
                                       const std::function<Rational(long)>& p) {
    std::vector<Rational> xs, ys;
    long x = 0;
    while (static_cast<long>(xs.size()) <= degree) {
        Rational e = fam_eta(ps, x);
        bool dup = false;
        for (const Rational& seen : xs)
            if (seen == e) dup = true;
        if (!dup) {
            xs.push_back(e);
            ys.push_back(p(x));
        }
        ++x;
    }
    // divided differences in place
    for (long order = 1; order <= degree; ++order)
        for (long i = degree; i >= order; --i)
            ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - order]);
    return ys[degree];
}

/// Closed-form proportionality constant for q-Racah, twist (i), ascending
/// index sets: LHS = A * RHS in verify_identity's normalization.
inline Rational qracah_constant_A(const ParamSet& ps, const IndexSets& idx) {
    if (ps.family != Family::qR) throw InvalidInput("constant A is q-Racah only");
    const Rational q = ps.q, d = ps.lam[3];
    const TwistEntry& tw = twist_entry(Family::qR, TwistId::I);
    ParamSet twisted = tw.param_map(ps);
    ParamSet shifted = shift_params(ps, -(idx.calN + 1));

    Rational A(1);
    for (long dj : idx.D) A *= leading_coefficient_cn(twisted, dj);
    for (long ej : idx.Dbar) A /= leading_coefficient_cn(shifted, ej);
    for (size_t i = 0; i < idx.D.size(); ++i)
        for (size_t j = i + 1; j < idx.D.size(); ++j)
            A *= Rational(1) - q.pow(idx.D[j] - idx.D[i]);
    for (size_t i = 0; i < idx.Dbar.size(); ++i)
        for (size_t j = i + 1; j < idx.Dbar.size(); ++j) {
            Rational f = Rational(1) - q.pow(idx.Dbar[j] - idx.Dbar[i]);
            if (f.is_zero()) throw EvaluationPole("constant A: coincident complementary degrees");
            A /= f;
        }
    for (long i = 1; i <= idx.M; ++i)
        A *= (Rational(1) - d * q.pow(i)).pow(idx.M - i);
    for (long i = 1; i <= idx.Nbar; ++i) {
        Rational f = (Rational(1) - d * q.pow(-idx.Nbar - idx.M + i));
        if (f.is_zero() && idx.Nbar - i > 0)
            throw EvaluationPole("constant A: vanishing (1 - d q^k) tower factor");
        A /= f.pow(idx.Nbar - i);
    }
    long sumd = 0;
    for (long dj : idx.D) sumd += dj;
    A *= d.pow(-sumd);
    long e = 0;
    for (long j = 1; j <= idx.M; ++j) e += (idx.M + 1 - j) * idx.D[j - 1];
    for (long j = 1; j <= idx.Nbar; ++j) e += j * idx.Dbar[j - 1];
    e -= idx.M * (idx.M - 1) * (2 * idx.M - 1) / 6;
    e -= (idx.Nbar - 1) * idx.Nbar * (idx.Nbar + 1) / 6;
    A *= q.pow(e);
    return A;
}

} // namespace rdqm
