#ifndef QSCALE_ERRORS_HPP
#define QSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qscale {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct domain_error : error {
    using error::error;
};

// Evaluation at a pole (e.g. the q-Gamma function at a nonpositive integer).
struct pole_error : error {
    using error::error;
};

// A complex value left the quarter-turn phase model (axes only).
struct phase_error : error {
    using error::error;
};

// A series would need more terms than the evaluator is willing to sum;
// the caller should switch regime (e.g. apply a modular transformation).
struct regime_error : error {
    using error::error;
};

// A scale sequence failed admissibility checks, or a scaled evaluation
// is out of the supported range.
struct scale_error : error {
    using error::error;
};

// Requested feature outside the supported parameter range.
struct unsupported_error : error {
    using error::error;
};

// Working precision was insufficient to resolve a comparison.
struct precision_error : error {
    using error::error;
};

// Bad configuration input (CLI, sweep config file, ceilings file).
struct config_error : error {
    using error::error;
};

// Filesystem failure while reading or writing artifacts.
struct io_error : error {
    using error::error;
};

} // namespace qscale

#endif
