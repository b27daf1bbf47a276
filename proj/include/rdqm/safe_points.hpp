#pragma once

#include <vector>

#include "rdqm/family.hpp"

namespace rdqm {

/// Default parameter point per family. Each point keeps the potentials
/// positive on the lattice (B > 0 on [0,N-1], D > 0 on [1,N], and likewise
/// on Z>=0 for the semi-infinite rows) and avoids every series degeneracy
/// reachable by the twist maps and the parameter shifts the identity engine
/// applies (no multiplicative parameter is an integer power of q, and no
/// additive one differs from an integer by another parameter).
inline ParamSet safe_point(Family f) {
    switch (f) {
        case Family::R:
            // a > N + d keeps x+d-a < 0 on [1,N]; b < 1+d keeps x+d-b > 0.
            return make_params(f, {{"a", Rational(35, 4)}, {"b", Rational(1, 2)}, {"d", Rational(3, 2)}}, 5);
        case Family::qR:
            // c = q^-N = 32; satisfies 0 < ac < dq, qd < b < q, d < q^2, and
            // xi_v > 0 on [-1, N+1] for v <= 3 (one-step deformation gate).
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 5000)},
                                   {"b", Rational(1, 3)}, {"d", Rational(1, 7)}}, 5);
        case Family::Ha:
            return make_params(f, {{"a", Rational(3, 2)}, {"b", Rational(5, 4)}}, 5);
        case Family::dHa:
            return make_params(f, {{"a", Rational(3, 2)}, {"b", Rational(5, 4)}}, 5);
        case Family::K:
            return make_params(f, {{"p", Rational(1, 3)}}, 5);
        case Family::qHa:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}, {"b", Rational(1, 5)}}, 5);
        case Family::dqHa:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}, {"b", Rational(1, 5)}}, 5);
        case Family::qqK:
            // p > q^-N = 32 keeps D > 0 on [1,N].
            return make_params(f, {{"q", Rational(1, 2)}, {"p", Rational(100)}}, 5);
        case Family::qK:
            return make_params(f, {{"q", Rational(1, 2)}, {"p", Rational(1, 3)}}, 5);
        case Family::dqK:
            // c < 0 keeps D > 0.
            return make_params(f, {{"q", Rational(1, 2)}, {"c", Rational(-1, 3)}}, 5);
        case Family::aqK:
            // p < q^-1 keeps 1 - p q^{x+1} > 0 on [0,N-1].
            return make_params(f, {{"q", Rational(1, 2)}, {"p", Rational(1, 3)}}, 5);
        case Family::M:
            return make_params(f, {{"beta", Rational(3, 2)}, {"c", Rational(1, 3)}});
        case Family::C:
            return make_params(f, {{"a", Rational(3, 2)}});
        case Family::lqJ:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}, {"b", Rational(1, 5)}});
        case Family::qM:
            return make_params(f, {{"q", Rational(1, 2)}, {"b", Rational(1, 3)}, {"c", Rational(2, 3)}});
        case Family::lqL:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}});
        case Family::ASCII:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}});
        case Family::qB:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}});
        case Family::qC:
            return make_params(f, {{"q", Rational(1, 2)}, {"a", Rational(1, 3)}});
    }
    throw InvalidInput("unreachable family");
}

/// Two additional pole-screened points per family, used by the suite so that
/// each identity family is certified at three distinct parameter points.
inline std::vector<ParamSet> alternate_points(Family f) {
    auto P = [f](std::map<std::string, Rational> vals, long N = -1) {
        return make_params(f, std::move(vals), N);
    };
    switch (f) {
        case Family::R:
            return {P({{"a", Rational(23, 4)}, {"b", Rational(3, 4)}, {"d", Rational(5, 4)}}, 4),
                    P({{"a", Rational(29, 4)}, {"b", Rational(1, 3)}, {"d", Rational(7, 4)}}, 5)};
        case Family::qR:
            return {P({{"q", Rational(1, 3)}, {"a", Rational(1, 7000)}, {"b", Rational(1, 4)}, {"d", Rational(1, 10)}}, 4),
                    P({{"q", Rational(2, 5)}, {"a", Rational(1, 9000)}, {"b", Rational(1, 4)}, {"d", Rational(1, 8)}}, 5)};
        case Family::Ha:
            return {P({{"a", Rational(5, 2)}, {"b", Rational(7, 4)}}, 4),
                    P({{"a", Rational(7, 3)}, {"b", Rational(8, 5)}}, 6)};
        case Family::dHa:
            return {P({{"a", Rational(5, 2)}, {"b", Rational(7, 4)}}, 4),
                    P({{"a", Rational(7, 3)}, {"b", Rational(8, 5)}}, 6)};
        case Family::K:
            return {P({{"p", Rational(2, 5)}}, 4), P({{"p", Rational(3, 7)}}, 6)};
        case Family::qHa:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}, {"b", Rational(1, 7)}}, 4),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}, {"b", Rational(1, 7)}}, 5)};
        case Family::dqHa:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}, {"b", Rational(1, 7)}}, 4),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}, {"b", Rational(1, 7)}}, 5)};
        case Family::qqK:
            return {P({{"q", Rational(1, 2)}, {"p", Rational(50)}}, 4),
                    P({{"q", Rational(1, 3)}, {"p", Rational(300)}}, 5)};
        case Family::qK:
            return {P({{"q", Rational(1, 2)}, {"p", Rational(2, 5)}}, 4),
                    P({{"q", Rational(1, 3)}, {"p", Rational(1, 5)}}, 5)};
        case Family::dqK:
            return {P({{"q", Rational(1, 2)}, {"c", Rational(-2, 5)}}, 4),
                    P({{"q", Rational(1, 3)}, {"c", Rational(-1, 5)}}, 5)};
        case Family::aqK:
            return {P({{"q", Rational(1, 2)}, {"p", Rational(2, 5)}}, 4),
                    P({{"q", Rational(1, 3)}, {"p", Rational(1, 5)}}, 5)};
        case Family::M:
            return {P({{"beta", Rational(5, 2)}, {"c", Rational(2, 5)}}),
                    P({{"beta", Rational(7, 3)}, {"c", Rational(1, 4)}})};
        case Family::C:
            return {P({{"a", Rational(5, 2)}}), P({{"a", Rational(2, 7)}})};
        case Family::lqJ:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}, {"b", Rational(1, 7)}}),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}, {"b", Rational(1, 7)}})};
        case Family::qM:
            return {P({{"q", Rational(1, 2)}, {"b", Rational(1, 5)}, {"c", Rational(3, 5)}}),
                    P({{"q", Rational(1, 3)}, {"b", Rational(1, 4)}, {"c", Rational(1, 2)}})};
        case Family::lqL:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}}),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}})};
        case Family::ASCII:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}}),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}})};
        case Family::qB:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}}),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}})};
        case Family::qC:
            return {P({{"q", Rational(1, 2)}, {"a", Rational(1, 5)}}),
                    P({{"q", Rational(1, 3)}, {"a", Rational(1, 4)}})};
    }
    throw InvalidInput("unreachable family");
}

} // namespace rdqm
