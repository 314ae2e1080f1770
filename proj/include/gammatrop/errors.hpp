#pragma once

#include <stdexcept>
#include <string>

namespace gammatrop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operands have incompatible truncation or dimension.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A geometric object does not have the structure the operation requires
/// (no bounded chamber, oval not found, radial solve failure).
class StructureError : public Error {
public:
    using Error::Error;
};

class UnsupportedDimensionError : public Error {
public:
    using Error::Error;
};

/// Least-squares design matrix is rank deficient or badly conditioned.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Requested point is the pinch point of the singular fibre.
class SingularFiberError : public Error {
public:
    using Error::Error;
};

}  // namespace gammatrop
