#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pii {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class ConstantChannel : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ImageTooSmall : public Error {
public:
    using Error::Error;
};

class DatasetTooSmall : public Error {
public:
    using Error::Error;
};

/// Iterative solve stopped above tolerance; carries what was achieved.
class NonConvergence : public Error {
public:
    NonConvergence(double achieved, std::size_t iterations)
        : Error("solver stopped at relative residual " + std::to_string(achieved) +
                " after " + std::to_string(iterations) + " iterations"),
          achieved_residual(achieved),
          iterations(iterations) {}

    double achieved_residual;
    std::size_t iterations;
};

class EmptyMap : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class BadK : public Error {
public:
    using Error::Error;
};

class NoPositives : public Error {
public:
    using Error::Error;
};

class MissingLabel : public Error {
public:
    using Error::Error;
};

class MalformedScoreMap : public Error {
public:
    using Error::Error;
};

class InsufficientInputs : public Error {
public:
    using Error::Error;
};

class ShapeHeterogeneity : public Error {
public:
    using Error::Error;
};

}  // namespace pii
