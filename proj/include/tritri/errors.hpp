#pragma once

#include <stdexcept>
#include <string>

namespace tritri {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A float coordinate is NaN or infinite.
class InvalidCoordinate : public Error {
public:
    using Error::Error;
};

/// An implicit point whose construction has no unique solution
/// (parallel line/plane, parallel or skew segments).
class DegenerateConstruction : public Error {
public:
    using Error::Error;
};

enum class DegeneracyReason { RepeatedVertex, Collinear };

class DegenerateTriangle : public Error {
public:
    explicit DegenerateTriangle(DegeneracyReason reason)
        : Error(reason == DegeneracyReason::RepeatedVertex ? "degenerate triangle: repeated vertex"
                                                           : "degenerate triangle: collinear vertices"),
          reason_(reason)
    {
    }

    DegeneracyReason reason() const noexcept { return reason_; }

private:
    DegeneracyReason reason_;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

/// Raised when an internal postcondition of the classifier does not hold.
class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

class MalformedDescriptor : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t location)
        : Error(what + " (at " + std::to_string(location) + ")"), location_(location)
    {
    }

    /// Line number for text formats, byte offset for binary ones.
    std::size_t location() const noexcept { return location_; }

private:
    std::size_t location_;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

} // namespace tritri
