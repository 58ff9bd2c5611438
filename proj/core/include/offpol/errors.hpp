#pragma once

#include <stdexcept>
#include <string>

namespace offpol {

/// A sampled action has zero behavior probability, or a benchmark's policies
/// leave some target-supported action unreachable.
class CoverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure in a solver: singular system, non-converged iteration,
/// overflow guard tripped.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Singular or near-singular system where an invertible one is required.
class RankError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Iterative solver failed to reach its tolerance within the iteration cap.
class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The Markov chain has states unreachable from one another (or zero
/// stationary mass), so no strictly positive stationary distribution exists.
class ReducibilityError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Config file or flag parsing failure. Carries the 1-based line number when
/// the failure is tied to a specific line (0 otherwise).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace offpol
