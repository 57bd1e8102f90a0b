#pragma once

#include <stdexcept>
#include <string>

namespace qsphere {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name)
        : Error("unknown variable: " + name) {}
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class DimensionOverBound : public Error {
public:
    using Error::Error;
};

/// A machine check that should hold by construction did not.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

/// The beta-extraction search gave up. Says nothing about existence of a lift.
class ReductionNotFound : public Error {
public:
    using Error::Error;
};

class NonUnitDeterminant : public Error {
public:
    using Error::Error;
};

class InvalidCocycle : public Error {
public:
    InvalidCocycle(std::string check, const std::string& detail)
        : Error("invalid cocycle (" + check + "): " + detail), check_(std::move(check)) {}

    const std::string& check() const noexcept { return check_; }

private:
    std::string check_;
};

class NonSphereTerm : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace qsphere
