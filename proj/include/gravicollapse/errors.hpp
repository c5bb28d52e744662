#pragma once

#include <stdexcept>
#include <string>

namespace gravicollapse {

// Base for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / input problems (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};
struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};
struct IoError : ConfigError {
    using ConfigError::ConfigError;
};
struct BadDimensions : ConfigError {
    using ConfigError::ConfigError;
};
struct ZeroRadius : ConfigError {
    using ConfigError::ConfigError;
};
struct NegativeSeparation : ConfigError {
    using ConfigError::ConfigError;
};
struct UnsoftenedPointKernel : ConfigError {
    using ConfigError::ConfigError;
};
struct UnresolvedWidth : ConfigError {
    using ConfigError::ConfigError;
};
struct UnresolvedCat : ConfigError {
    using ConfigError::ConfigError;
};

// Numerical failures during a run (CLI exit code 3).
struct NumericalError : Error {
    using Error::Error;
};
struct StabilityViolation : NumericalError {
    using NumericalError::NumericalError;
};
struct NormDrift : NumericalError {
    using NumericalError::NumericalError;
};
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct NotPositiveSemidefinite : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace gravicollapse
