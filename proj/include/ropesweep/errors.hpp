#pragma once

#include <stdexcept>
#include <string>

namespace ropesweep {

/// Input violates a documented precondition or invariant (CLI exit code 2).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A projection direction is not generic for the given polygon.
class NonGenericProjection : public ValidationError {
public:
    explicit NonGenericProjection(const std::string& what) : ValidationError(what) {}
};

/// A numerical procedure could not produce a result (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ropesweep
