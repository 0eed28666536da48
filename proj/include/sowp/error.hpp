#pragma once

#include <stdexcept>
#include <string>

namespace sowp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration, species record or command line.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (root search, fit, degenerate saddle, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sowp
