// errors.hpp: exception types shared by the numerical modules

#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

// Base of every numeric failure raised by the library. The CLI maps these to
// exit code 1; std::invalid_argument (bad parameters) maps to exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "numeric"; }
};

class PoleError : public NumericError {
public:
    using NumericError::NumericError;
    const char* kind() const noexcept override { return "pole"; }
};

class OverflowError : public NumericError {
public:
    using NumericError::NumericError;
    const char* kind() const noexcept override { return "overflow"; }
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
    const char* kind() const noexcept override { return "domain"; }
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
    const char* kind() const noexcept override { return "non-convergence"; }
};

class TailBoundError : public NumericError {
public:
    using NumericError::NumericError;
    const char* kind() const noexcept override { return "tail-bound"; }
};

// Internal-consistency failure (e.g. an unphysical covariance matrix).
class ConsistencyError : public NumericError {
public:
    using NumericError::NumericError;
    const char* kind() const noexcept override { return "consistency"; }
};

} // namespace diamond
