#pragma once

#include <stdexcept>
#include <string>

namespace tolspace {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad indices, negative weights, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was invoked outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A size guard (point count, enumeration size, dense spectrum) was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// A checked theorem or structural invariant failed on a concrete instance.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace tolspace
