// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace starframe {

/// Invalid run configuration (bad grid sizes, unknown keys, unwritable paths).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operands live on different grids or have different block dimensions.
struct mismatch_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Bad argument to an operation (negative power, malformed Green's function, ...).
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The implicit diagonal factor of the forward substitution is singular;
/// the time step is too large for this kernel. Refine the grid.
struct step_too_large : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fidelity metric is undefined (zero-norm operator at some node).
struct undefined_metric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix that must be inverted (frame sample, check intermediate) is
/// numerically singular.
struct singular_matrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace starframe
