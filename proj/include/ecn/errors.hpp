#pragma once

#include <stdexcept>
#include <string>

namespace ecn {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller passed a value outside the operation's domain.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// An operation that needs at least one element received none.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Malformed XML/JSON/CSV input.
class ParseError : public Error {
public:
    using Error::Error;
};

// Input failed semantic validation (bad vocabulary, dangling pair, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A persisted file declares a schema we do not understand.
class FormatError : public Error {
public:
    using Error::Error;
};

// Network-level failure; retrying may help.
class TransportError : public Error {
public:
    using Error::Error;
};

// The remote service answered with an error banner.
class RemoteError : public Error {
public:
    using Error::Error;
};

// Local filesystem failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ecn
