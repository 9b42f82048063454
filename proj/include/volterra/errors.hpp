#pragma once

#include <stdexcept>
#include <string>

namespace volterra {

/// Base for failures of the numerical procedures (root search, quadrature,
/// triangular recursion). The CLI maps every subclass to one exit code.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No sign change of K_N was found on the scan interval.
class NoRootFound : public NumericError {
public:
    using NumericError::NumericError;
};

/// The diagonal weight of the triangular system is too small relative to
/// the size of its individual terms.
class DegenerateDiagonal : public NumericError {
public:
    using NumericError::NumericError;
};

/// Adaptive quadrature hit the subdivision depth limit.
class QuadratureNonconvergence : public NumericError {
public:
    using NumericError::NumericError;
};

/// A benchmark id outside the supported set.
class UnsupportedFunction : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Too few points for a regression.
class InsufficientData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace volterra
