#pragma once

#include <stdexcept>
#include <string>

namespace mvstable {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside their admissible domain (alpha, beta, gamma, weights, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A parameter combination the implementation deliberately does not support.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// An estimator could not produce a usable result from the data it was given.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Invalid run or grid configuration (odd n, infeasible windows, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical breakdown: singular systems, non-convergent iterations.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Input file problems.
class LoadError : public Error {
public:
    using Error::Error;
};

}  // namespace mvstable
