#pragma once

#include <stdexcept>
#include <string>

namespace curveflux {

// Base class for every failure the library reports deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside a curve/profile parameter domain, or malformed input shape.
class DomainError : public Error {
public:
    using Error::Error;
};

// A wall or offset reaches the focal set (1 - k*v hits zero, log argument <= 0).
class FocalPointError : public Error {
public:
    using Error::Error;
};

// Channel violates w > 0 or the 1 - s*k >= margin condition somewhere.
class ValidityError : public Error {
public:
    using Error::Error;
};

// Parallel distinct wall tangents with k != 0: the linear estimator has no pole.
class NoIntersectionError : public Error {
public:
    using Error::Error;
};

// Tangent or identical circles: the Steiner construction degenerates.
class DegeneratePairError : public Error {
public:
    using Error::Error;
};

// eval_P at (or a sample circle through) a pole of the map.
class PoleError : public Error {
public:
    using Error::Error;
};

// Factorization breakdown or residual above tolerance in the elliptic solve.
class SolverError : public Error {
public:
    using Error::Error;
};

// Aggregated configuration violations (every problem listed, not just the first).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace curveflux
