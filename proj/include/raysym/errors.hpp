#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace raysym {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when an operation that needs n >= 3 gets a smaller dimension.
class DimensionTooSmall : public Error {
public:
    using Error::Error;
};

class InvalidAutomorphism : public Error {
public:
    using Error::Error;
};

class SingularOperator : public Error {
public:
    using Error::Error;
};

/// <x,f> vanishes, so x (x) f is nilpotent rather than idempotent.
class DegeneratePair : public Error {
public:
    using Error::Error;
};

class NotIdempotent : public Error {
public:
    using Error::Error;
};

class ExtensionInconsistent : public Error {
public:
    using Error::Error;
};

class UnrecognizedAutomorphism : public Error {
public:
    using Error::Error;
};

/// The map is not of the form A h(P) A^{-1}; carries the validation
/// residual when one was computed (NaN otherwise).
class NotInduced : public Error {
public:
    explicit NotInduced(const std::string& what,
                        double residual = std::numeric_limits<double>::quiet_NaN())
        : Error(what), residual_(residual) {}

    [[nodiscard]] double residual() const { return residual_; }

private:
    double residual_;
};

class DegenerateProbe : public Error {
public:
    using Error::Error;
};

class DegenerateImage : public Error {
public:
    using Error::Error;
};

class InvalidRay : public Error {
public:
    using Error::Error;
};

} // namespace raysym
