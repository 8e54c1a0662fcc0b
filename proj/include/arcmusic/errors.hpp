#pragma once

#include <stdexcept>
#include <string>

namespace arcmusic {

// Parameter/domain violations use std::domain_error / std::invalid_argument.
// The types below separate failures the CLI maps to distinct exit codes.

/// Degenerate or invalid geometry (cusp, self-intersection, overlapping arcs).
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// The discrete forward system could not be solved reliably.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed its accuracy/convergence contract.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Inconsistent or degenerate data handed between pipeline stages.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arcmusic
