#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct ParameterError : Error {
    using Error::Error;
};

struct ConsistencyError : Error {
    using Error::Error;
};

struct StrategyError : Error {
    using Error::Error;
};

struct InsufficiencyError : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// A required predicate is false; `predicate` names it.
struct HypothesisError : Error {
    HypothesisError(std::string predicate, const std::string& detail)
        : Error("hypothesis '" + predicate + "' violated: " + detail), predicate(std::move(predicate)) {}
    std::string predicate;
};

struct SingularityError : Error {
    SingularityError(double sigma_min, double sigma_max, const std::string& what)
        : Error(what + ": numerically singular (sigma_min = " + std::to_string(sigma_min) +
                ", sigma_max = " + std::to_string(sigma_max) + ")"),
          sigma_min(sigma_min), sigma_max(sigma_max) {}
    double sigma_min;
    double sigma_max;
};

// Eigensolve or SVD exhausted its sweep budget. `partial` holds whatever
// eigenvalue moduli or singular values were already settled.
struct NumericalError : Error {
    NumericalError(const std::string& what, std::vector<double> partial, std::size_t unresolved)
        : Error(what), partial(std::move(partial)), unresolved(unresolved) {}
    std::vector<double> partial;
    std::size_t unresolved;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

}  // namespace splitlab
