#pragma once

#include <stdexcept>
#include <string>

namespace esor {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN/Inf encountered where a finite number is required (vector entries,
// derivative evaluations, ...).
class NonFiniteError : public Error {
public:
    using Error::Error;
};

// Pivot collapse in Gaussian elimination.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

// Impulse response failed to decay: the closed-loop observer matrix is not
// stable, so its L1 norm does not exist.
class NotHurwitzError : public Error {
public:
    using Error::Error;
};

// Defensive: the observability matrix of the canonical chain lost rank.
class ObservabilityError : public Error {
public:
    using Error::Error;
};

// Series truncation cannot converge (pole on or outside the unit circle).
class NonConvergentError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain an operation is defined on (negative dt,
// pole outside [0,1), pendulum beyond +-pi/2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Strict robust mode needs a Lipschitz constant for the barrier gradient.
class MissingLipschitzError : public Error {
public:
    using Error::Error;
};

// Bad or inconsistent scenario configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace esor
