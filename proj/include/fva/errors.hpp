#pragma once

#include <stdexcept>
#include <string>

namespace fva {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative time,
/// recovery outside [0,1], reversed interval, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite intermediate or a singular input (0/0 in a ratio of densities).
class NumericError : public Error {
public:
    using Error::Error;
};

/// A self-check between two independent evaluation routes failed.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration could not be read or failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require_domain(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace detail

}  // namespace fva
