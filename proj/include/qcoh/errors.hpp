#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

/// Base class for all qcoh errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible or out-of-range matrix dimensions.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// An input object violates its type invariants.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A numerical routine failed to converge or produced garbage.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

/// Malformed on-disk data.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Two routes that must agree algebraically disagreed beyond tolerance.
/// Signals a numerics bug in this library, not a physics failure.
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what) : Error(what) {}
};

} // namespace qcoh
