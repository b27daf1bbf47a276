#pragma once

#include <optional>
#include <vector>

#include "rdqm/errors.hpp"
#include "rdqm/rational.hpp"

namespace rdqm {

enum class ProportionalityStatus { Proportional, BothZero, Mismatch };

inline const char* to_string(ProportionalityStatus s) {
    switch (s) {
        case ProportionalityStatus::Proportional: return "proportional";
        case ProportionalityStatus::BothZero: return "both-zero";
        case ProportionalityStatus::Mismatch: return "mismatch";
    }
    return "?";
}

struct ProportionalityReport {
    ProportionalityStatus status = ProportionalityStatus::Mismatch;
    std::optional<Rational> ratio;  // lhs[i] = ratio * rhs[i], present iff Proportional
    long samples_used = 0;
    std::vector<long> degenerate_points; // grid points skipped by the caller
};

/// Decide whether lhs = r * rhs for a single nonzero r. Zeros must match
/// positionally; a zero on one side only falsifies proportionality.
inline ProportionalityReport fit_proportionality(const std::vector<Rational>& lhs,
                                                 const std::vector<Rational>& rhs) {
    if (lhs.size() != rhs.size())
        throw InvalidInput("fit_proportionality: length mismatch");
    if (lhs.size() < 2)
        throw InvalidInput("fit_proportionality: need at least 2 samples");
    ProportionalityReport rep;
    rep.samples_used = static_cast<long>(lhs.size());
    std::optional<Rational> ratio;
    bool any_nonzero = false;
    for (size_t i = 0; i < lhs.size(); ++i) {
        const bool lz = lhs[i].is_zero(), rz = rhs[i].is_zero();
        if (lz != rz) {
            rep.status = ProportionalityStatus::Mismatch;
            return rep;
        }
        if (lz) continue;
        any_nonzero = true;
        Rational r = lhs[i] / rhs[i];
        if (!ratio) {
            ratio = r;
        } else if (*ratio != r) {
            rep.status = ProportionalityStatus::Mismatch;
            return rep;
        }
    }
    if (!any_nonzero) {
        rep.status = ProportionalityStatus::BothZero;
        return rep;
    }
    rep.status = ProportionalityStatus::Proportional;
    rep.ratio = ratio;
    return rep;
}

} // namespace rdqm
