#pragma once

#include <stdexcept>
#include <string>

namespace cohsys {

// Base class for everything thrown by the library. Subclasses map onto the
// CLI exit codes: ValidationError -> 2, BoundsError -> 3, anything else -> 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class BoundsError : public Error {
public:
    using Error::Error;
};

// Raised when an internal consistency check fails; indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

class CycleError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DisconnectedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GenusError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class GcdError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegreeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptySubcurveError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SingleComponentError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroRankError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroKError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class HypothesisError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace cohsys
