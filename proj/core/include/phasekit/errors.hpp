#pragma once

#include <stdexcept>
#include <string>

namespace phasekit {

// Error taxonomy shared by the library and the CLI. The CLI maps these onto
// process exit codes: invalid/unsupported input and degenerate projections are
// caller mistakes (exit 2); resource, resolution and convergence failures are
// environmental or numerical limits (exit 3).

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violation: bad parameter value, unnormalized state, malformed spec.
struct InvalidInput : Error {
    using Error::Error;
};

// Operation is well-formed but not defined for this input type
// (e.g. momentum statistics of a bare density, plain parity on half-integer modes).
struct UnsupportedInput : Error {
    using Error::Error;
};

// A symmetrization annihilated the state (projection onto the zero vector).
struct DegenerateProjection : Error {
    using Error::Error;
};

// Work would exceed a hard cap (mode count, matrix size).
struct ResourceLimit : Error {
    using Error::Error;
};

// A grid or quadrature was too coarse to resolve the requested quantity.
struct ResolutionError : Error {
    using Error::Error;
};

// A regularized sum showed no sign of converging at the damping cutoff.
struct ConvergenceError : Error {
    using Error::Error;
};

} // namespace phasekit
