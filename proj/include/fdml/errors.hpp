#pragma once

#include <stdexcept>
#include <string>

namespace fdml {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied an out-of-domain value (order outside (0, 1], h <= 0, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Numerical failure: the inputs were valid but the computation could not finish.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class UnsupportedOption : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InsufficientSamples : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ConvergenceBudgetExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoExtrema : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RootWindowExhausted : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateDeterminant : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace fdml
