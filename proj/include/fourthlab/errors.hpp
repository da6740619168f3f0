#pragma once

#include <stdexcept>
#include <string>

namespace fourthlab {

/// Base of every error raised by the library. Carries the name of the
/// offending parameter when one can be identified (empty otherwise).
class Error : public std::runtime_error {
public:
    Error(std::string parameter, const std::string& message)
        : std::runtime_error(parameter.empty() ? message : parameter + ": " + message),
          parameter_(std::move(parameter)),
          message_(message) {}

    const std::string& parameter() const noexcept { return parameter_; }
    /// The message without the parameter prefix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string parameter_;
    std::string message_;
};

/// Caller passed a value outside the documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Sampled data is unusable (NaN/Inf, wrong length, malformed file).
class InvalidData : public Error {
public:
    using Error::Error;
};

/// Numerical failures. The CLI maps everything below to exit status 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The grid cannot represent the requested object (band above Nyquist,
/// support leaving the periodic domain).
class ResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Negative-order multiplier hit a nonzero zero-frequency bin.
class SingularMultiplier : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Zero input where a quotient needs a nonzero denominator.
class DegenerateInput : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// whitney_pair called with coincident points.
class NoPairError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// spacetime_separation called on parameters whose (h, xi) differ.
class WrongBranchError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

}  // namespace fourthlab
