#pragma once

#include <stdexcept>
#include <string>

namespace lozi {

// Base class for every error raised by the library. The CLI reports
// ParameterError as a usage error (exit code 1) and the rest as exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite input, or a radicand that went negative.
class DomainError : public Error {
public:
    using Error::Error;
};

// Parameters outside the region an operation needs.
class ParameterError : public Error {
public:
    using Error::Error;
};

// The inverse map does not exist for b = 0.
class SingularMapError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, long last_finite)
        : Error(what), last_finite_(last_finite) {}
    /// Index of the last iterate that was still finite.
    long last_finite() const noexcept { return last_finite_; }

private:
    long last_finite_;
};

class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int completed_depth)
        : Error(what), completed_depth_(completed_depth) {}
    int completed_depth() const noexcept { return completed_depth_; }

private:
    int completed_depth_;
};

// A search ran out of iterations (max_iter too small).
class ExhaustionError : public Error {
public:
    using Error::Error;
};

// Classification requested too close to the end of a truncated arc.
class BoundaryAmbiguityError : public Error {
public:
    using Error::Error;
};

class InsufficientDepthError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace lozi
