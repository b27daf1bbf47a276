#pragma once

#include <stdexcept>
#include <string>

namespace rdqm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zero denominator in a rational constructor or division.
struct DivisionByZero : Error {
    using Error::Error;
};

/// Malformed or out-of-contract input (bad literal, wrong sizes, unknown token).
struct InvalidInput : Error {
    using Error::Error;
};

/// A denominator Pochhammer factor vanished at an order the series actually uses.
struct PoleInSeries : Error {
    PoleInSeries(const std::string& what, const std::string& param, long order)
        : Error(what), parameter(param), order(order) {}
    std::string parameter;
    long order = 0;
};

/// A potential function or auxiliary product hit a vanishing denominator.
struct EvaluationPole : Error {
    using Error::Error;
};

/// No constants (alpha, alpha') satisfy the twisted-potential equations.
struct NotATwist : Error {
    using Error::Error;
};

/// A twisted vector failed its support contract away from the lattice boundary.
struct TwistTableError : Error {
    using Error::Error;
};

/// Parameters violate the positivity constraints needed for a real symmetric matrix.
struct InvalidParameters : Error {
    using Error::Error;
};

/// An exact identity check found a genuine counterexample.
struct IdentityFalsified : Error {
    using Error::Error;
};

/// Both sides of a proportionality vanished identically on the grid.
struct DegenerateInstance : Error {
    using Error::Error;
};

/// A deformed-spectrum residual exceeded its tolerance.
struct DeformationError : Error {
    using Error::Error;
};

} // namespace rdqm
