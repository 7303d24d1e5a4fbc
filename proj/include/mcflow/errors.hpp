#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

/// Base class for all solver failures. Carries a plain what() message;
/// callers that know the grid location annotate it before rethrowing.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-positive density, pressure or internal energy where positivity is required.
struct PositivityError : SolverError {
    using SolverError::SolverError;
};

/// Bad user input: config files, case names, CLI arguments, grid/BC combinations.
struct ConfigError : SolverError {
    using SolverError::SolverError;
};

}  // namespace mcf
