/// @file errors.hpp
/// @brief Exception types thrown across the library.

#ifndef SADDLE_ERRORS_HPP
#define SADDLE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace saddle {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand shapes do not conform.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Malformed file contents (Matrix Market, config files, CSV).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

/// Zero pivot encountered after pivoting; carries the elimination step.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, std::int64_t step)
        : Error(what + " (elimination step " + std::to_string(step) + ")"),
          step_(step) {}
    std::int64_t step() const { return step_; }

private:
    std::int64_t step_;
};

/// An iterative solve failed (breakdown, indefiniteness, inner-solve failure).
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

/// Invalid run configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace saddle

#endif // SADDLE_ERRORS_HPP
