#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthokit {

// Base of every exception thrown by the library. kind() is a stable,
// machine-readable token used by the CLI when it reports a failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual const char* kind() const noexcept { return "error"; }
    // Numerical failures (as opposed to bad input) map to CLI exit code 2.
    [[nodiscard]] virtual bool numerical() const noexcept { return false; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "invalid_argument"; }
};

class DimensionError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "dimension_mismatch"; }
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what), line_(line), column_(column) {}
    [[nodiscard]] const char* kind() const noexcept override { return "parse_error"; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class IoError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "io_error"; }
};

// Triangular solve hit a pivot below the singularity threshold.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, std::size_t pivot)
        : Error(what), pivot_(pivot) {}
    [[nodiscard]] const char* kind() const noexcept override { return "singular_matrix"; }
    [[nodiscard]] bool numerical() const noexcept override { return true; }
    [[nodiscard]] std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(const std::string& what, std::size_t index)
        : Error(what), index_(index) {}
    [[nodiscard]] const char* kind() const noexcept override { return "not_positive_definite"; }
    [[nodiscard]] bool numerical() const noexcept override { return true; }
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class RankDeficientError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "rank_deficient"; }
    [[nodiscard]] bool numerical() const noexcept override { return true; }
};

// Iterative phase did not converge; carries how far it got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations, std::size_t converged)
        : Error(what), iterations_(iterations), converged_(converged) {}
    [[nodiscard]] const char* kind() const noexcept override { return "no_convergence"; }
    [[nodiscard]] bool numerical() const noexcept override { return true; }
    [[nodiscard]] std::size_t iterations() const noexcept { return iterations_; }
    // Number of trailing values that had deflated before giving up.
    [[nodiscard]] std::size_t converged() const noexcept { return converged_; }

private:
    std::size_t iterations_;
    std::size_t converged_;
};

}  // namespace orthokit
