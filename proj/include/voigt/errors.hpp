#pragma once

#include <stdexcept>
#include <string>

namespace voigt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Misuse of an interface: bad parameters, malformed input files,
/// preconditions violated. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not reach its accuracy target.
/// The CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class OutOfDomain final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NegativeTime final : public ValidationError {
public:
    NegativeTime() : ValidationError("time must be non-negative") {}
};

class WrongRegime final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidAlpha final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidExponents final : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnstableParameters final : public ValidationError {
public:
    explicit UnstableParameters(const std::string& violated_inequality)
        : ValidationError("unstable finite-difference parameters: " + violated_inequality),
          inequality(violated_inequality) {}
    std::string inequality;
};

/// Series tail certificate could not meet the requested tolerance within
/// the mode cap. Carries the bound that was achieved.
class TruncationFailure final : public NumericalError {
public:
    TruncationFailure(double requested_tol, double achieved_bound, long modes)
        : NumericalError("truncation certificate " + std::to_string(achieved_bound) +
                         " exceeds tolerance " + std::to_string(requested_tol) + " at mode cap " +
                         std::to_string(modes)),
          requested(requested_tol), achieved(achieved_bound), n_used(modes) {}
    double requested;
    double achieved;
    long n_used;
};

class QuadratureFailure final : public NumericalError {
public:
    QuadratureFailure(double error_estimate, double threshold_value)
        : NumericalError("quadrature error estimate " + std::to_string(error_estimate) +
                         " exceeds threshold " + std::to_string(threshold_value)),
          estimate(error_estimate), threshold(threshold_value) {}
    double estimate;
    double threshold;
};

class StiffnessFailure final : public NumericalError {
public:
    StiffnessFailure() : NumericalError("adaptive step collapsed below 1e-14 * horizon") {}
};

class SamplingTooCoarse final : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace voigt
