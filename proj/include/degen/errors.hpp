#pragma once

#include <stdexcept>
#include <string>

namespace degen {

/// Argument outside the problem domain [0,1] x [0,T].
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mismatched vector lengths or grid spacings.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Stencil index outside its valid range.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Boundary signs not sample-uniform, or data inconsistent with the case.
struct ClassificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration (bad key, non-nested levels, missing data).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition of a diagnostic routine does not hold.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside the linear solver or time loop.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strict mode refused to run an unstable configuration.
struct StabilityRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace degen
