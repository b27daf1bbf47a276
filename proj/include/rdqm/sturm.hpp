#pragma once

#include <vector>

#include "rdqm/bigfloat.hpp"
#include "rdqm/errors.hpp"
#include "rdqm/linalg.hpp"

namespace rdqm {

namespace detail {

/// Number of eigenvalues strictly below `x`, from the signs of the Sturm
/// sequence of leading principal minors (computed as the d_i of an LDL^T
/// factorization of T - x I). A vanishing pivot is nudged to keep the
/// count well-defined; the nudge is far below the bisection resolution.
inline long sturm_count(const SymTridiag& t, const BigFloat& x, const BigFloat& tiny) {
    long count = 0;
    BigFloat d(1);
    for (size_t i = 0; i < t.size(); ++i) {
        BigFloat piv = t.diag[i] - x;
        if (i > 0) piv -= t.off[i - 1] * t.off[i - 1] / d;
        if (piv.is_zero()) piv = -tiny;
        if (piv.sign() < 0) ++count;
        d = piv;
    }
    return count;
}

} // namespace detail

/// All eigenvalues of a real symmetric tridiagonal matrix, ascending, by
/// bisection on Sturm sequence sign counts. Each eigenvalue is bracketed to
/// width 2^(-P/2) * max(1, |bound|) where P is the default precision.
inline std::vector<BigFloat> eigenvalues_symmetric_tridiag(const std::vector<BigFloat>& diag,
                                                           const std::vector<BigFloat>& off) {
    const size_t n = diag.size();
    if (n == 0) throw InvalidInput("eigenvalues of an empty matrix");
    if (off.size() + 1 != n) throw InvalidInput("offdiagonal length must be n-1");
    SymTridiag t{diag, off};

    // Gershgorin bounds
    BigFloat lo = diag[0], hi = diag[0];
    for (size_t i = 0; i < n; ++i) {
        BigFloat r(0);
        if (i > 0) r += off[i - 1].abs();
        if (i + 1 < n) r += off[i].abs();
        lo = lo < diag[i] - r ? lo : diag[i] - r;
        hi = hi > diag[i] + r ? hi : diag[i] + r;
    }
    const mpfr_prec_t prec = BigFloat::default_precision();
    BigFloat scale = max(BigFloat(1), max(lo.abs(), hi.abs()));
    // bracket well below the advertised 2^(-P/2) accuracy so downstream
    // comparisons at that tolerance keep headroom
    BigFloat eps = BigFloat::pow2(-static_cast<long>(prec / 2) - 16) * scale;
    BigFloat tiny = BigFloat::pow2(-static_cast<long>(2 * prec)) * scale;
    lo -= eps;
    hi += eps;

    std::vector<BigFloat> ev;
    ev.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        BigFloat a = lo, b = hi;
        // invariant: count(a) <= k < count(b)
        while (true) {
            BigFloat width = b - a;
            if (width <= eps) break;
            BigFloat mid = (a + b) / BigFloat(2);
            if (mid <= a || mid >= b) break;
            if (detail::sturm_count(t, mid, tiny) >= static_cast<long>(k) + 1)
                b = mid;
            else
                a = mid;
        }
        ev.push_back((a + b) / BigFloat(2));
    }
    return ev;
}

} // namespace rdqm
