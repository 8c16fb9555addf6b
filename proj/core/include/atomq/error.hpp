#pragma once

#include <stdexcept>
#include <string>

namespace atomq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad layout, bad parameters, bad config).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Numerical breakdown: norm growth, non-finite values, failed convergence.
class NumericError : public Error {
public:
    using Error::Error;
};

/// File-system failure while reading configs or writing tables.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace atomq
