#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace kgws {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A denominator or Gamma argument sits on a pole.
/// `location` carries the offending abscissa (x for potentials, z for Gamma).
class PoleError : public Error {
public:
    PoleError(const std::string& what, std::complex<double> location)
        : Error(what), location_(location) {}

    std::complex<double> location() const noexcept { return location_; }

private:
    std::complex<double> location_;
};

/// A series or closed-form value does not converge in the requested regime.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// The NU discriminant condition is identically satisfied or unsolvable.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Only sigma(s) = s - s^2 is handled by the weight/phi solver.
class UnsupportedSigmaError : public Error {
public:
    using Error::Error;
};

/// An existence condition does not hold. `condition` names it.
class ConditionViolated : public Error {
public:
    ConditionViolated(const std::string& condition, const std::string& detail)
        : Error(condition + ": " + detail), condition_(condition) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

/// No level survives the filters.
class EmptySpectrum : public Error {
public:
    using Error::Error;
};

class NonNormalizable : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double error_estimate)
        : Error(what), error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

/// The fixed-step integrator left its stability region or produced non-finite values.
class StiffnessError : public Error {
public:
    using Error::Error;
};

/// Malformed input (JSON schema, CLI flags).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace kgws
