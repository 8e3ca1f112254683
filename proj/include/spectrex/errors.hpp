#pragma once

#include <stdexcept>
#include <string>

namespace spectrex {

/// Caller passed something malformed or out of range. CLI exit code 1.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// The request is well-formed but exceeds a built-in scale limit. CLI exit code 2.
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative method ran out of its iteration budget. Carries the best
/// residual reached so the caller can decide whether it is usable anyway.
struct convergence_error : std::runtime_error {
    double best_residual;
    std::uint64_t iterations;
    convergence_error(const std::string& what, double residual, std::uint64_t iters)
        : std::runtime_error(what), best_residual(residual), iterations(iters) {}
};

} // namespace spectrex
