#pragma once

#include <stdexcept>
#include <string>

namespace fujita {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or dimensionally inconsistent input.
class InputError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (e.g. b of a non-big class).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input that parses but violates a structural requirement, such as a
/// group action that does not preserve the effective cone.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Data that contradicts itself (supplied values disagree with computed ones).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace fujita
