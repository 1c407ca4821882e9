#pragma once

#include <stdexcept>
#include <string>

namespace pvpower {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument: infeasible rate, log of a nonpositive number, bad level.
class DomainError : public Error {
public:
    using Error::Error;
};

// Estimate sitting on 0 or 1 where the caller needs an interior value.
class BoundaryError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_iterate, double residual)
        : Error(what), last_iterate_(last_iterate), residual_(residual) {}
    double last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    double last_iterate_;
    double residual_;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    using Error::Error;
};

class DegenerateMassError : public Error {
public:
    using Error::Error;
};

// File or config content that does not follow the expected layout.
class SchemaError : public Error {
public:
    SchemaError(const std::string& what, long line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

}  // namespace pvpower
