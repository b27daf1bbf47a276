#pragma once

#include <functional>
#include <vector>

#include "rdqm/bigfloat.hpp"
#include "rdqm/errors.hpp"
#include "rdqm/rational.hpp"

namespace rdqm {

/// Exact determinant by Gaussian elimination with nonzero pivoting.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw InvalidInput("determinant: matrix not square");
    Rational det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = m[c][c].inverse();
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Rational f = m[r][c] * inv;
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Symmetric tridiagonal matrix over BigFloat: diag.size() = n, off.size() = n-1.
struct SymTridiag {
    std::vector<BigFloat> diag;
    std::vector<BigFloat> off;

    size_t size() const { return diag.size(); }
};

/// Dense symmetric matrix-vector product for a tridiagonal matrix.
inline std::vector<BigFloat> tridiag_apply(const SymTridiag& t, const std::vector<BigFloat>& v) {
    const size_t n = t.size();
    std::vector<BigFloat> r(n);
    for (size_t i = 0; i < n; ++i) {
        BigFloat s = t.diag[i] * v[i];
        if (i > 0) s += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) s += t.off[i] * v[i + 1];
        r[i] = s;
    }
    return r;
}

/// det(T - shift I) for a symmetric tridiagonal matrix, by the three-term
/// recurrence for leading principal minors.
inline BigFloat shifted_determinant(const SymTridiag& t, const BigFloat& shift) {
    BigFloat prev(1);
    BigFloat cur = t.diag[0] - shift;
    for (size_t i = 1; i < t.size(); ++i) {
        BigFloat next = (t.diag[i] - shift) * cur - t.off[i - 1] * t.off[i - 1] * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace rdqm
