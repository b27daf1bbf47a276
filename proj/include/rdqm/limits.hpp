#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rdqm/errors.hpp"
#include "rdqm/family.hpp"
#include "rdqm/safe_points.hpp"

namespace rdqm {

/// One reduction edge of the family scheme: an embedding of the target's
/// parameters into the source family, exact at every rational t along the
/// documented approach sequence.
struct LimitEdge {
    Family source;
    Family target;
    std::vector<Rational> t_values;  // documented approach sequence
    // target point -> source point at parameter t
    std::function<ParamSet(const ParamSet&, const Rational&)> embed;
    // lattice coordinate seen by the source (identity unless the edge flips x)
    std::function<long(const ParamSet&, const Rational&, long)> x_map;
    // factor multiplying the target polynomial in the comparison
    std::function<Rational(const ParamSet&, const Rational&, long)> prefactor;
};

struct ConvergenceReport {
    std::vector<Rational> deviations;  // |source(t) - prefactor * target|
    bool decreasing = false;           // strictly, except identically-zero tails
    bool final_small = false;          // last deviation < 1e-6
    bool pass() const { return decreasing && final_small; }
};

namespace limit_detail {

inline std::vector<Rational> seq_big() {
    return {Rational(100), Rational(mpz_class("100000")), Rational(mpz_class("1000000000"))};
}
inline std::vector<Rational> seq_small() {
    return {Rational(1, 100), Rational(mpz_class(1), mpz_class("100000")),
            Rational(mpz_class(1), mpz_class("10000000000"))};
}
/// Edges whose embedding is exact at the endpoint include it as the last step.
inline std::vector<Rational> seq_small_to_zero() {
    return {Rational(1, 100), Rational(mpz_class(1), mpz_class("100000")), Rational(0)};
}
inline std::vector<Rational> seq_lattice() {
    return {Rational(20), Rational(40), Rational(80)};
}

inline long as_long(const Rational& r) {
    if (!r.is_integer()) throw InvalidInput("expected an integer t for a lattice-size edge");
    return static_cast<long>(r.num().get_si());
}

} // namespace limit_detail

inline const std::vector<LimitEdge>& limit_edges() {
    using limit_detail::as_long;
    static const std::vector<LimitEdge> edges = [] {
        std::vector<LimitEdge> E;
        auto ident_x = [](const ParamSet&, const Rational&, long x) { return x; };
        auto unit_pref = [](const ParamSet&, const Rational&, long) { return Rational(1); };
        auto mk = [&](Family s, Family t, std::vector<Rational> ts,
                      std::function<ParamSet(const ParamSet&, const Rational&)> embed) {
            E.push_back({s, t, std::move(ts), std::move(embed), ident_x, unit_pref});
        };

        mk(Family::R, Family::Ha, limit_detail::seq_big(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::R;
            s.N = tgt.N;
            s.lam = {tgt.lam[0], tgt.lam[1] + Rational(tgt.N) + t, Rational(-tgt.N), t};
            return s;
        });
        mk(Family::R, Family::dHa, limit_detail::seq_big(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::R;
            s.N = tgt.N;
            s.lam = {tgt.lam[0], t, Rational(-tgt.N), tgt.lam[0] + tgt.lam[1] - Rational(1)};
            return s;
        });
        mk(Family::Ha, Family::K, limit_detail::seq_big(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::Ha;
            s.N = tgt.N;
            s.lam = {Rational(1) + tgt.lam[0] * t, Rational(1) + (Rational(1) - tgt.lam[0]) * t,
                     Rational(tgt.N)};
            return s;
        });
        mk(Family::Ha, Family::M, limit_detail::seq_big(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::Ha;
            s.N = as_long(t);
            s.lam = {tgt.lam[0], Rational(1) + (Rational(1) - tgt.lam[1]) / tgt.lam[1] * t, t};
            return s;
        });
        mk(Family::M, Family::C, limit_detail::seq_big(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::M;
            s.lam = {t, tgt.lam[0] / (tgt.lam[0] + t)};
            return s;
        });
        mk(Family::qR, Family::qHa, limit_detail::seq_small(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::qR;
            s.q = tgt.q;
            s.N = tgt.N;
            s.lam = {tgt.lam[0], tgt.lam[1] * tgt.lam[2] * t, tgt.lam[2].inverse(), t};
            return s;
        });
        mk(Family::qR, Family::dqHa, limit_detail::seq_small(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::qR;
            s.q = tgt.q;
            s.N = tgt.N;
            s.lam = {tgt.lam[0], t, tgt.lam[2].inverse(), tgt.lam[0] * tgt.lam[1] / tgt.q};
            return s;
        });
        mk(Family::qHa, Family::qqK, limit_detail::seq_big(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::qHa;
            s.q = tgt.q;
            s.N = tgt.N;
            s.lam = {t, tgt.lam[0] * tgt.q, tgt.lam[1]};
            return s;
        });
        mk(Family::qHa, Family::qK, limit_detail::seq_small(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::qHa;
            s.q = tgt.q;
            s.N = tgt.N;
            s.lam = {t, -tgt.lam[0] * tgt.q / t, tgt.lam[1]};
            return s;
        });
        mk(Family::dqHa, Family::dqK, limit_detail::seq_small(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::dqHa;
            s.q = tgt.q;
            s.N = tgt.N;
            s.lam = {t, tgt.lam[0] * tgt.q / (tgt.lam[1] * t), tgt.lam[1]};
            return s;
        });
        mk(Family::qHa, Family::aqK, limit_detail::seq_small_to_zero(),
           [](const ParamSet& tgt, const Rational& t) {
               ParamSet s;
               s.family = Family::qHa;
               s.q = tgt.q;
               s.N = tgt.N;
               s.lam = {tgt.lam[0] * tgt.q, t, tgt.lam[1]};
               return s;
           });
        // little q-Jacobi sits at the reflected end of the q-Hahn lattice and
        // carries an explicit prefactor.
        E.push_back({Family::qHa, Family::lqJ, limit_detail::seq_lattice(),
                     [](const ParamSet& tgt, const Rational& t) {
                         ParamSet s;
                         s.family = Family::qHa;
                         s.q = tgt.q;
                         s.N = as_long(t);
                         s.lam = {tgt.lam[0] * tgt.q, tgt.lam[1] * tgt.q, tgt.q.pow(s.N)};
                         return s;
                     },
                     [](const ParamSet&, const Rational& t, long x) { return as_long(t) - x; },
                     [](const ParamSet& tgt, const Rational&, long n) {
                         return (-tgt.lam[0]).pow(n) * tgt.q.pow(n * (n + 1) / 2) *
                                qpoch(tgt.lam[1] * tgt.q, tgt.q, n) /
                                qpoch(tgt.lam[0] * tgt.q, tgt.q, n);
                     }});
        mk(Family::qHa, Family::qM, limit_detail::seq_lattice(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::qHa;
            s.q = tgt.q;
            s.N = as_long(t);
            s.lam = {tgt.lam[0] * tgt.q, -tgt.q.pow(-s.N) / (tgt.lam[0] * tgt.lam[1]), tgt.q.pow(s.N)};
            return s;
        });
        mk(Family::lqJ, Family::lqL, limit_detail::seq_small_to_zero(),
           [](const ParamSet& tgt, const Rational& t) {
               ParamSet s;
               s.family = Family::lqJ;
               s.q = tgt.q;
               s.lam = {tgt.lam[0], t};
               return s;
           });
        mk(Family::qM, Family::ASCII, limit_detail::seq_small(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::qM;
            s.q = tgt.q;
            s.lam = {-tgt.lam[0] / t, t};
            return s;
        });
        mk(Family::lqJ, Family::qB, limit_detail::seq_small(), [](const ParamSet& tgt, const Rational& t) {
            ParamSet s;
            s.family = Family::lqJ;
            s.q = tgt.q;
            s.lam = {t, -tgt.lam[0] / (t * tgt.q)};
            return s;
        });
        mk(Family::qM, Family::qC, limit_detail::seq_small_to_zero(),
           [](const ParamSet& tgt, const Rational& t) {
               ParamSet s;
               s.family = Family::qM;
               s.q = tgt.q;
               s.lam = {t, tgt.lam[0]};
               return s;
           });
        return E;
    }();
    return edges;
}

inline const LimitEdge& find_edge(Family source, Family target) {
    for (const LimitEdge& e : limit_edges())
        if (e.source == source && e.target == target) return e;
    throw InvalidInput(std::string("no reduction edge ") + meta(source).token + " -> " +
                       meta(target).token);
}

/// Evaluate |source(t) - prefactor * target| along the sequence; pass iff the
/// deviations strictly decrease (identically-zero tails allowed) and the
/// final one is below 1e-6, all compared as exact rationals.
inline ConvergenceReport limit_relation_check(const LimitEdge& edge, const ParamSet& target_point,
                                              long n, long x,
                                              const std::vector<Rational>& ts = {}) {
    const std::vector<Rational>& seq = ts.empty() ? edge.t_values : ts;
    ConvergenceReport rep;
    Rational tgt_val = eval_polynomial(target_point, n, x);
    for (const Rational& t : seq) {
        ParamSet src = edge.embed(target_point, t);
        long xs = edge.x_map(target_point, t, x);
        Rational pf = edge.prefactor(target_point, t, n);
        Rational dev = eval_polynomial(src, n, xs) - pf * tgt_val;
        if (dev.sign() < 0) dev = -dev;
        rep.deviations.push_back(dev);
    }
    rep.decreasing = true;
    for (size_t i = 0; i + 1 < rep.deviations.size(); ++i) {
        const Rational& a = rep.deviations[i];
        const Rational& b = rep.deviations[i + 1];
        if (!(b < a || (a.is_zero() && b.is_zero()))) rep.decreasing = false;
    }
    rep.final_small = rep.deviations.back() < Rational(mpz_class(1), mpz_class(1000000));
    return rep;
}

inline ConvergenceReport limit_relation_check(Family source, Family target,
                                              const ParamSet& target_point, long n, long x,
                                              const std::vector<Rational>& ts = {}) {
    return limit_relation_check(find_edge(source, target), target_point, n, x, ts);
}

} // namespace rdqm
