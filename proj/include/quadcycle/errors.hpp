#pragma once

#include <stdexcept>
#include <string>

namespace quadcycle {

/// Bad user-supplied parameter (precondition violation).
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The zero set of the field is not a finite point set.
struct DegenerateFieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integration broke down (step underflow, NaN state).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Poincare section could not be used (not transversal, empty, ...).
struct SectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A scenario stage exhausted its search budget.
struct StageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace quadcycle
