#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdqm/errors.hpp"
#include "rdqm/family.hpp"
#include "rdqm/qseries.hpp"

namespace rdqm {

enum class TwistId { I, II, It, IIt, III, IV, IIIt, IVt };

inline const char* to_token(TwistId t) {
    switch (t) {
        case TwistId::I: return "i";
        case TwistId::II: return "ii";
        case TwistId::It: return "i~";
        case TwistId::IIt: return "ii~";
        case TwistId::III: return "iii";
        case TwistId::IV: return "iv";
        case TwistId::IIIt: return "iii~";
        case TwistId::IVt: return "iv~";
    }
    return "?";
}

inline TwistId twist_from_token(const std::string& tok) {
    for (TwistId t : {TwistId::I, TwistId::II, TwistId::It, TwistId::IIt,
                      TwistId::III, TwistId::IV, TwistId::IIIt, TwistId::IVt})
        if (tok == to_token(t)) return t;
    throw InvalidInput("unknown twist token: '" + tok + "'");
}

/// How the twist acts on the lattice coordinate.
enum class XMapKind {
    Reflect,       // t(x) = -x-1;   B'(x) = D(t(x)), D'(x) = B(t(x))
    ShiftBeyondN,  // t(x) = x-N-1;  B'(x) = B(t(x)), D'(x) = D(t(x))
};

using XiForm = std::function<Rational(const ParamSet&, long, long)>; // (ps, v, x)

struct TwistEntry {
    TwistId id;
    XMapKind kind;
    bool inverts_q = false;   // tilde twists replace the base by 1/q
    bool exchanged = false;   // a<->b exchanged variant (registered for R/qR)
    bool energy_above = false; // pseudo energy meets E_{v+N+1} instead of E_{-v-1}
    std::function<ParamSet(const ParamSet&)> param_map;
    std::function<Rational(const ParamSet&)> alpha_printed;  // null when the text derives it
    std::vector<XiForm> xi_printed;  // explicit closed forms, cross-checked against the twist
};

namespace twist_detail {

inline const Rational one(1);
inline const Rational two(2);

inline ParamSet remap(const ParamSet& ps, std::vector<Rational> lam, bool invert_q) {
    ParamSet out = ps;
    out.lam = std::move(lam);
    if (meta(ps.family).is_q && invert_q) out.q = ps.q.inverse();
    return out;
}

inline std::vector<TwistEntry> build(Family f) {
    using R_ = Rational;
    std::vector<TwistEntry> t;
    auto phi = [](std::vector<Rational> num, std::vector<Rational> den, const R_& q,
                  const R_& z, long deg) { return hyper_terminating(hyper_phi(std::move(num), std::move(den), q, z, deg)); };
    auto F = [](std::vector<Rational> num, std::vector<Rational> den, const R_& z, long deg) {
        return hyper_terminating(hyper_f(std::move(num), std::move(den), z, deg));
    };
    switch (f) {
        case Family::R: {
            auto dt = [](const ParamSet& ps) { return dtilde(ps); };
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {Rational(2) - ps.lam[0], Rational(2) - ps.lam[1],
                                               Rational(2) - ps.lam[2], Rational(2) - ps.lam[3]}, false);
                         },
                         [](const ParamSet&) { return Rational(1); },
                         {[F, dt](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(v) + two - dt(ps), R_(x + 1), R_(1 - x) - ps.lam[3]},
                                      {two - ps.lam[0], two - ps.lam[1], two - ps.lam[2]}, R_(1), v);
                         }}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {two - l[0] - l[2] + l[3], two - l[1] - l[2] + l[3],
                                               two - l[2], two - l[2] - l[2] + l[3]}, false);
                         },
                         [](const ParamSet&) { return Rational(1); },
                         {[F, dt](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             return F({R_(-v), R_(v) + two - dt(ps), R_(1 - x) - l[2],
                                       R_(x) + l[0] + l[1] - dt(ps)},
                                      {one + l[0] - dt(ps), one + l[1] - dt(ps), two - l[2]}, R_(1), v);
                         }}});
            // a<->b exchanged variants
            t.push_back({TwistId::I, XMapKind::Reflect, false, true, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {Rational(2) - ps.lam[1], Rational(2) - ps.lam[0],
                                               Rational(2) - ps.lam[2], Rational(2) - ps.lam[3]}, false);
                         },
                         nullptr, {}});
            t.push_back({TwistId::III, XMapKind::Reflect, false, false, true,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {one + l[0] - l[3], one + l[1] - l[3], two - l[2], two - l[3]}, false);
                         },
                         nullptr, {}});
            t.push_back({TwistId::IV, XMapKind::ShiftBeyondN, false, false, true,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {one + l[0] - l[2], one + l[1] - l[2], two - l[2],
                                               two - l[2] - l[2] + l[3]}, false);
                         },
                         nullptr, {}});
            break;
        }
        case Family::qR: {
            auto q2 = [](const ParamSet& ps) { return ps.q * ps.q; };
            auto xi_i = [phi](const ParamSet& ps, long v, long x) {
                const auto& l = ps.lam;
                Rational dt = dtilde(ps), q = ps.q;
                return phi({q.pow(-v), q.pow(v + 2) / dt, q.pow(x + 1), q.pow(1 - x) / l[3]},
                           {q * q / l[0], q * q / l[1], q * q / l[2]}, q, q, v);
            };
            auto xi_ii = [phi](const ParamSet& ps, long v, long x) {
                const auto& l = ps.lam;
                Rational dt = dtilde(ps), q = ps.q;
                return phi({q.pow(-v), q.pow(v + 2) / dt, q.pow(1 - x) / l[2], l[0] * l[1] / dt * q.pow(x)},
                           {q * l[0] / dt, q * l[1] / dt, q * q / l[2]}, q, q, v);
            };
            auto alpha_main = [](const ParamSet& ps) { return dtilde(ps) / ps.q; };
            auto alpha_tilde = [](const ParamSet& ps) { return ps.q; };
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [q2](const ParamSet& ps) {
                             return remap(ps, {q2(ps) / ps.lam[0], q2(ps) / ps.lam[1],
                                               q2(ps) / ps.lam[2], q2(ps) / ps.lam[3]}, false);
                         },
                         alpha_main, {xi_i}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [q2](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {q2(ps) * l[3] / (l[0] * l[2]), q2(ps) * l[3] / (l[1] * l[2]),
                                               q2(ps) / l[2], q2(ps) * l[3] / (l[2] * l[2])}, false);
                         },
                         alpha_main, {xi_ii}});
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [q2](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0] / q2(ps), ps.lam[1] / q2(ps),
                                               ps.lam[2] / q2(ps), ps.lam[3] / q2(ps)}, true);
                         },
                         alpha_tilde, {xi_i}});
            t.push_back({TwistId::IIt, XMapKind::ShiftBeyondN, true, false, false,
                         [q2](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {l[0] * l[2] / (l[3] * q2(ps)), l[1] * l[2] / (l[3] * q2(ps)),
                                               l[2] / q2(ps), l[2] * l[2] / (l[3] * q2(ps))}, true);
                         },
                         alpha_tilde, {xi_ii}});
            t.push_back({TwistId::I, XMapKind::Reflect, false, true, false,
                         [q2](const ParamSet& ps) {
                             return remap(ps, {q2(ps) / ps.lam[1], q2(ps) / ps.lam[0],
                                               q2(ps) / ps.lam[2], q2(ps) / ps.lam[3]}, false);
                         },
                         nullptr, {}});
            t.push_back({TwistId::III, XMapKind::Reflect, false, false, true,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {ps.q * l[0] / l[3], ps.q * l[1] / l[3],
                                               ps.q * ps.q / l[2], ps.q * ps.q / l[3]}, false);
                         },
                         nullptr, {}});
            t.push_back({TwistId::IV, XMapKind::ShiftBeyondN, false, false, true,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {ps.q * l[0] / l[2], ps.q * l[1] / l[2],
                                               ps.q * ps.q / l[2], ps.q * ps.q * l[3] / (l[2] * l[2])}, false);
                         },
                         nullptr, {}});
            t.push_back({TwistId::IIIt, XMapKind::Reflect, true, false, true,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {l[3] / (l[0] * ps.q), l[3] / (l[1] * ps.q),
                                               l[2] / (ps.q * ps.q), l[3] / (ps.q * ps.q)}, true);
                         },
                         nullptr, {}});
            t.push_back({TwistId::IVt, XMapKind::ShiftBeyondN, true, false, true,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {l[2] / (l[0] * ps.q), l[2] / (l[1] * ps.q),
                                               l[2] / (ps.q * ps.q), l[2] * l[2] / (l[3] * ps.q * ps.q)}, true);
                         },
                         nullptr, {}});
            break;
        }
        case Family::Ha:
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {two - ps.lam[0], two - ps.lam[1], R_(-2) - ps.lam[2]}, false);
                         },
                         [](const ParamSet&) { return Rational(1); },
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(v + 3) - ps.lam[0] - ps.lam[1], R_(x + 1)},
                                      {two - ps.lam[0], ps.lam[2] + two}, R_(1), v);
                         }}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {two - ps.lam[1], two - ps.lam[0], R_(-2) - ps.lam[2]}, false);
                         },
                         [](const ParamSet&) { return Rational(1); },
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(v + 3) - ps.lam[0] - ps.lam[1], ps.lam[2] + R_(1 - x)},
                                      {two - ps.lam[1], ps.lam[2] + two}, R_(1), v);
                         }}});
            break;
        case Family::dHa:
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {two - ps.lam[0], two - ps.lam[1], R_(-2) - ps.lam[2]}, false);
                         },
                         [](const ParamSet&) { return Rational(-1); },
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(2 - x) - ps.lam[0] - ps.lam[1], R_(x + 1)},
                                      {two - ps.lam[0], ps.lam[2] + two}, R_(1), v);
                         }}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             return remap(ps, {one + l[1] + l[2], one + l[0] + l[2], R_(-2) - l[2]}, false);
                         },
                         [](const ParamSet&) { return Rational(-1); },
                         {[F](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             return F({R_(-v), R_(x) + l[0] + l[1] + l[2], l[2] + R_(1 - x)},
                                      {l[1] + l[2] + one, l[2] + two}, R_(1), v);
                         }}});
            break;
        case Family::K:
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0], R_(-2) - ps.lam[1]}, false);
                         },
                         [](const ParamSet&) { return Rational(-1); },
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(x + 1)}, {ps.lam[1] + two}, ps.lam[0].inverse(), v);
                         }}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {one - ps.lam[0], R_(-2) - ps.lam[1]}, false);
                         },
                         [](const ParamSet&) { return Rational(-1); },
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), ps.lam[1] + R_(1 - x)}, {ps.lam[1] + two},
                                      (one - ps.lam[0]).inverse(), v);
                         }}});
            break;
        case Family::qHa:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             const Rational qq = ps.q * ps.q;
                             return remap(ps, {ps.lam[0] / qq, ps.lam[1] / qq, ps.lam[2] * qq}, true);
                         },
                         [](const ParamSet& ps) { return ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), q.pow(v + 3) / (l[0] * l[1]), q.pow(x + 1)},
                                        {q * q / l[0], l[2] * q * q}, q, l[1] * l[2] * q.pow(-x), v);
                         }}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [](const ParamSet& ps) {
                             const Rational qq = ps.q * ps.q;
                             return remap(ps, {qq / ps.lam[1], qq / ps.lam[0], ps.lam[2].inverse() / qq}, false);
                         },
                         [](const ParamSet& ps) { return ps.lam[0] * ps.lam[1] / (ps.q * ps.q); },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), q.pow(v + 3) / (l[0] * l[1]), l[2] * q.pow(1 - x)},
                                        {q * q / l[1], l[2] * q * q}, q, q, v);
                         }}});
            break;
        case Family::dqHa:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             const Rational qq = ps.q * ps.q;
                             return remap(ps, {ps.lam[0] / qq, ps.lam[1] / qq, ps.lam[2] * qq}, true);
                         },
                         [](const ParamSet& ps) { return ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), q.pow(2 - x) / (l[0] * l[1]), q.pow(x + 1)},
                                        {q * q / l[0], l[2] * q * q}, q, l[1] * l[2] * q.pow(v + 1), v);
                         }}});
            t.push_back({TwistId::IIt, XMapKind::ShiftBeyondN, true, false, false,
                         [](const ParamSet& ps) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return remap(ps, {(q * l[1] * l[2]).inverse(), (q * l[0] * l[2]).inverse(),
                                               l[2] * q * q}, true);
                         },
                         [](const ParamSet& ps) { return ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), l[0] * l[1] * l[2] * q.pow(x), l[2] * q.pow(1 - x)},
                                        {l[1] * l[2] * q, l[2] * q * q}, q, q.pow(v + 2) / l[0], v);
                         }}});
            break;
        case Family::qqK:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0], ps.lam[1] * ps.q * ps.q}, true);
                         },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), q.pow(x + 1)}, {l[1] * q * q}, q,
                                        l[0] * l[1] * q.pow(1 - x), v);
                         }}});
            break;
        case Family::qK:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             const Rational qq = ps.q * ps.q;
                             return remap(ps, {ps.lam[0] / qq, ps.lam[1] * qq}, true);
                         },
                         [](const ParamSet& ps) { return ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), -q.pow(v + 2) / l[0], q.pow(x + 1)},
                                        {l[1] * q * q}, q, -l[0] * l[1] * q.pow(-x - 1), v);
                         }}});
            t.push_back({TwistId::II, XMapKind::ShiftBeyondN, false, false, false,
                         [](const ParamSet& ps) {
                             const Rational qq = ps.q * ps.q;
                             return remap(ps, {qq / ps.lam[0], ps.lam[1].inverse() / qq}, false);
                         },
                         [](const ParamSet& ps) { return -ps.lam[0] / ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), -q.pow(v + 2) / l[0], l[1] * q.pow(1 - x)},
                                        {l[1] * q * q, Rational(0)}, q, q, v);
                         }}});
            break;
        case Family::dqK:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0], ps.lam[1] * ps.q * ps.q}, true);
                         },
                         [](const ParamSet& ps) { return ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), l[1] * q.pow(1 - x) / l[0], q.pow(x + 1)},
                                        {l[1] * q * q}, q, l[0] * q.pow(v), v);
                         }}});
            t.push_back({TwistId::IIt, XMapKind::ShiftBeyondN, true, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0].inverse(), ps.lam[1] * ps.q * ps.q}, true);
                         },
                         [](const ParamSet& ps) { return ps.q; },
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), l[0] * q.pow(x + 1), l[1] * q.pow(1 - x)},
                                        {l[1] * q * q}, q, q.pow(v) / l[0], v);
                         }}});
            break;
        case Family::aqK:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0], ps.lam[1] * ps.q * ps.q}, true);
                         },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), q.pow(x + 1)}, {q / l[0], l[1] * q * q}, q,
                                        l[1] * q.pow(v + 2 - x) / l[0], v);
                         }}});
            break;
        case Family::M:
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {two - ps.lam[0], ps.lam[1]}, false);
                         },
                         nullptr,
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(x + 1)}, {two - ps.lam[0]},
                                      one - ps.lam[1].inverse(), v);
                         }}});
            break;
        case Family::C:
            t.push_back({TwistId::I, XMapKind::Reflect, false, false, false,
                         [](const ParamSet& ps) { return remap(ps, {-ps.lam[0]}, false); },
                         nullptr,
                         {[F](const ParamSet& ps, long v, long x) {
                             return F({R_(-v), R_(x + 1)}, {}, ps.lam[0].inverse(), v);
                         }}});
            break;
        case Family::lqJ:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) { return remap(ps, {ps.lam[0], ps.lam[1]}, true); },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                              const auto& l = ps.lam;
                              const Rational q = ps.q;
                              return (-l[1]).pow(-v) * q.pow(v * (v + 1) / 2) *
                                     qpoch(q / l[0], q, v) / qpoch(q / l[1], q, v) *
                                     phi({q.pow(-v), q.pow(v + 1) / (l[0] * l[1])}, {q / l[0]}, q,
                                         l[1] * q.pow(x + 1), v);
                          },
                          [phi](const ParamSet& ps, long v, long x) {
                              const auto& l = ps.lam;
                              const Rational q = ps.q;
                              return phi({q.pow(-v), q.pow(v + 1) / (l[0] * l[1]), q.pow(x + 1)},
                                         {q / l[1], Rational(0)}, q, q, v);
                          }}});
            break;
        case Family::qM:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) { return remap(ps, {ps.lam[0], ps.lam[1]}, true); },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                             const auto& l = ps.lam;
                             const Rational q = ps.q;
                             return phi({q.pow(-v), q.pow(x + 1)}, {q / l[0]}, q,
                                        -q.pow(-x) / (l[0] * l[1]), v);
                         }}});
            break;
        case Family::lqL:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) { return remap(ps, {ps.lam[0]}, true); },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                              return phi({ps.q.pow(-v), ps.q.pow(x + 1)}, {Rational(0)}, ps.q,
                                         ps.q.pow(v + 1) / ps.lam[0], v);
                          },
                          [phi](const ParamSet& ps, long v, long x) {
                              const Rational a = ps.lam[0], q = ps.q;
                              return (-a).pow(-v) * q.pow(v * (v + 1) / 2) * qpoch(a * q.pow(-v), q, v) *
                                     phi({q.pow(-v)}, {q / a}, q, q.pow(v + x + 2) / a, v);
                          }}});
            break;
        case Family::ASCII:
            // The closed form below is the twist image rewritten at base q; a
            // zero denominator parameter (not an empty list) makes the
            // convention factor drop out, matching the q-Charlier pattern.
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) { return remap(ps, {ps.lam[0]}, true); },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                             return phi({ps.q.pow(-v), ps.q.pow(x + 1)}, {Rational(0)}, ps.q,
                                        ps.q.pow(-x) / ps.lam[0], v);
                         }}});
            break;
        case Family::qB:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) {
                             return remap(ps, {ps.lam[0] / (ps.q * ps.q)}, true);
                         },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                              const Rational a = ps.lam[0], q = ps.q;
                              return q.pow(v * (x + 1)) *
                                     phi({q.pow(-v), q.pow(x + 1)}, {}, q, -q.pow(2 * v + 1 - x) / a, v);
                          },
                          [phi](const ParamSet& ps, long v, long x) {
                              const Rational a = ps.lam[0], q = ps.q;
                              return (-a).pow(-v) * q.pow(v * (v + 2)) *
                                     phi({q.pow(-v), -q.pow(v + 2) / a}, {}, q, -a * q.pow(x - 1), v);
                          },
                          [phi](const ParamSet& ps, long v, long x) {
                              const Rational a = ps.lam[0], q = ps.q;
                              return phi({q.pow(-v), -q.pow(v + 2) / a, q.pow(x + 1)},
                                         {Rational(0), Rational(0)}, q, q, v);
                          }}});
            break;
        case Family::qC:
            t.push_back({TwistId::It, XMapKind::Reflect, true, false, false,
                         [](const ParamSet& ps) { return remap(ps, {ps.lam[0]}, true); },
                         nullptr,
                         {[phi](const ParamSet& ps, long v, long x) {
                             return phi({ps.q.pow(-v), ps.q.pow(x + 1)}, {}, ps.q,
                                        -ps.q.pow(-x - 1) / ps.lam[0], v);
                         }}});
            break;
    }
    return t;
}

} // namespace twist_detail

/// All twists registered for a family, in the order the reduced-family
/// catalogue lists them (the first entry drives the identity instances).
inline const std::vector<TwistEntry>& twists_for(Family f) {
    static const std::map<Family, std::vector<TwistEntry>> table = [] {
        std::map<Family, std::vector<TwistEntry>> m;
        for (Family f : all_families()) m.emplace(f, twist_detail::build(f));
        return m;
    }();
    return table.at(f);
}

inline const TwistEntry& twist_entry(Family f, TwistId id) {
    for (const TwistEntry& t : twists_for(f))
        if (t.id == id && !t.exchanged) return t;
    throw InvalidInput(std::string("twist ") + to_token(id) + " not registered for family " +
                       meta(f).token);
}

inline long twisted_x(const ParamSet& ps, const TwistEntry& t, long x) {
    if (t.kind == XMapKind::Reflect) return -x - 1;
    if (ps.N < 0) throw InvalidInput("shift-type twist needs a lattice size");
    return x - ps.N - 1;
}

/// Pseudo virtual state polynomial via the defining twist.
inline Rational eval_xi(const ParamSet& ps, const TwistEntry& t, long v, long x) {
    return eval_polynomial(t.param_map(ps), v, twisted_x(ps, t, x));
}

inline Rational eval_xi(const ParamSet& ps, TwistId id, long v, long x) {
    return eval_xi(ps, twist_entry(ps.family, id), v, x);
}

/// Twisted potential functions.
inline Rational twisted_B(const ParamSet& ps, const TwistEntry& t, long x) {
    ParamSet tp = t.param_map(ps);
    long tx = twisted_x(ps, t, x);
    return t.kind == XMapKind::Reflect ? fam_D(tp, tx) : fam_B(tp, tx);
}

inline Rational twisted_D(const ParamSet& ps, const TwistEntry& t, long x) {
    ParamSet tp = t.param_map(ps);
    long tx = twisted_x(ps, t, x);
    return t.kind == XMapKind::Reflect ? fam_B(tp, tx) : fam_D(tp, tx);
}

struct TwistedPotentials {
    std::function<Rational(long)> Bprime;
    std::function<Rational(long)> Dprime;
    Rational alpha;
    Rational alpha_prime;
};

/// Solve B + D = alpha (B' + D') + alpha' at two sample points, then validate
/// both defining equations (including B D = alpha^2 B' D') at every usable
/// sample. Points where either side has a pole are skipped.
inline std::pair<Rational, Rational> derive_constants(const ParamSet& ps, const TwistEntry& t) {
    const long hi = (ps.N >= 0 ? ps.N : 6) + 2;
    struct Sample { long x; Rational s, sp; };
    std::vector<Sample> pts;
    for (long x = -2; x <= hi; ++x) {
        try {
            pts.push_back({x, fam_B(ps, x) + fam_D(ps, x), twisted_B(ps, t, x) + twisted_D(ps, t, x)});
        } catch (const EvaluationPole&) {
            continue;
        }
    }
    if (pts.size() < 7) throw NotATwist("too few usable sample points");
    std::optional<std::pair<Rational, Rational>> best;
    for (size_t i = 0; i + 1 < pts.size() && !best; ++i) {
        if (pts[i].sp == pts[i + 1].sp) continue;
        Rational alpha = (pts[i].s - pts[i + 1].s) / (pts[i].sp - pts[i + 1].sp);
        Rational alphap = pts[i].s - alpha * pts[i].sp;
        best = {alpha, alphap};
    }
    if (!best) throw NotATwist("B' + D' constant across all samples");
    const auto& [alpha, alphap] = *best;
    if (alpha.is_zero()) throw NotATwist("derived alpha is zero");
    for (const Sample& s : pts) {
        if (s.s != alpha * s.sp + alphap)
            throw NotATwist("sum equation fails at x = " + std::to_string(s.x));
        try {
            Rational bd = fam_B(ps, s.x) * fam_D(ps, s.x + 1);
            Rational bdp = twisted_B(ps, t, s.x) * twisted_D(ps, t, s.x + 1);
            if (bd != alpha * alpha * bdp)
                throw NotATwist("product equation fails at x = " + std::to_string(s.x));
        } catch (const EvaluationPole&) {
            continue;
        }
    }
    return *best;
}

/// Build the twisted potentials with their constants; the printed alpha, when
/// the catalogue lists one, must agree with the derived value.
inline TwistedPotentials make_twist(const ParamSet& ps, TwistId id) {
    const TwistEntry& t = twist_entry(ps.family, id);
    auto [alpha, alphap] = derive_constants(ps, t);
    if (t.alpha_printed) {
        Rational printed = t.alpha_printed(ps);
        if (printed != alpha)
            throw TwistTableError(std::string("derived alpha disagrees with the catalogue for ") +
                                  meta(ps.family).token + "/" + to_token(id));
    }
    TwistedPotentials out;
    out.alpha = alpha;
    out.alpha_prime = alphap;
    out.Bprime = [ps, &t](long x) { return twisted_B(ps, t, x); };
    out.Dprime = [ps, &t](long x) { return twisted_D(ps, t, x); };
    return out;
}

/// Pseudo virtual state energy: alpha E_v(t(lambda); t(q)) + alpha'.
inline Rational pseudo_energy(const ParamSet& ps, TwistId id, long v) {
    const TwistEntry& t = twist_entry(ps.family, id);
    auto [alpha, alphap] = derive_constants(ps, t);
    return alpha * eval_energy(t.param_map(ps), v) + alphap;
}

/// Printed constant relating the second registered twist's xi to the first's:
/// xi^{(2nd)}_v = xi^{(1st)}_v * ratio. Only families with two twists.
inline Rational xi_ratio_printed(const ParamSet& ps, long v) {
    const auto& l = ps.lam;
    const Rational one(1);
    switch (ps.family) {
        case Family::R: {
            Rational dt = dtilde(ps);
            return poch(Rational(2) - l[0], v) * poch(Rational(2) - l[1], v) /
                   (poch(one + l[0] - dt, v) * poch(one + l[1] - dt, v));
        }
        case Family::qR: {
            Rational dt = dtilde(ps), q = ps.q;
            return l[3].pow(v) * qpoch(q * q / l[0], q, v) * qpoch(q * q / l[1], q, v) /
                   (l[2].pow(v) * qpoch(q * l[0] / dt, q, v) * qpoch(q * l[1] / dt, q, v));
        }
        case Family::Ha:
            return poch(Rational(2) - l[0], v) / poch(l[1] - Rational(v + 1), v);
        case Family::dHa:
            return poch(Rational(2) - l[0], v) / poch(l[1] + Rational(ps.N + 1), v);
        case Family::K:
            return (one - l[0].inverse()).pow(-v);
        case Family::qHa:
            return qpoch(ps.q * ps.q / l[0], ps.q, v) / qpoch(l[1] * ps.q.pow(-v - 1), ps.q, v);
        case Family::dqHa:
            return qpoch(ps.q * ps.q / l[0], ps.q, v) / qpoch(l[1] * l[2] * ps.q, ps.q, v);
        case Family::qK:
            return (-l[0]).pow(-v) * ps.q.pow(v * (v + 2));
        case Family::dqK:
            return l[0].pow(-v);
        default:
            throw InvalidInput("no printed inter-twist constant for this family");
    }
}

} // namespace rdqm
