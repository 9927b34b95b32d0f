#pragma once

#include <stdexcept>
#include <string>

namespace maxmodel {

/// Malformed textual input (series, configs, algebra files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested quantity cannot be certified at the working precision.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs violate a precondition (non-prime p, p | i, wrong group kind...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A structural identity that must hold failed; signals a construction bug.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A tower stage that must be a totally ramified DVR is not.
class StageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace maxmodel
