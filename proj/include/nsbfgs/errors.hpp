#pragma once

#include <stdexcept>
#include <string>

namespace nsbfgs {

// Precondition violations (bad dimensions, invalid configuration).
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Scalars from two different precision contexts met in one operation.
struct PrecisionMismatchError : std::invalid_argument {
    explicit PrecisionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation produced a NaN or infinity.
struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative kernel hit its cap without reaching its tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// s^T y <= 0 in a quasi-Newton update.
struct CurvatureError : std::runtime_error {
    explicit CurvatureError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nsbfgs
