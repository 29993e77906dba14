#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foldcheck {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Classes from two different algebras were combined.
class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Atom parameter or argument outside its admissible range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// A constructed or loaded record breaks one of its defining invariants.
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : Error("invariant violated [" + invariant + "]: " + detail), invariant_(std::move(invariant))
    {
    }

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

// Syntax or evaluation error in a manifold expression; position is 1-based.
class ExpressionError : public Error {
public:
    ExpressionError(std::size_t position, const std::string& message)
        : Error("at position " + std::to_string(position) + ": " + message), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Two rules reached opposite conclusions for the same query.
class RuleConflict : public Error {
public:
    using Error::Error;
};

}  // namespace foldcheck
