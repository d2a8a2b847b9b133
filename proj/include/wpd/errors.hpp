#pragma once

#include <stdexcept>
#include <string>

namespace wpd {

/// A state leaked measurable weight into the truncation edge of the basis.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in bases of different size (or a point has the wrong dof).
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Fock-coefficient normalization constraint violated (sum |c_m|^2 > 1).
struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An action variable J_i < 0.
struct NegativeAction : std::domain_error {
    using std::domain_error::domain_error;
};

/// Operation requested too close to the J = 0 chart singularity.
struct SingularPoint : std::domain_error {
    using std::domain_error::domain_error;
};

/// Adaptive integrator could not meet its tolerance.
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time series with no samples.
struct EmptySeries : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A produced quantity failed a convergence / conservation gate.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal numerical consistency check failed (should not happen).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wpd
