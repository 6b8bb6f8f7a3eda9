#pragma once

#include <stdexcept>
#include <string>

namespace sqcom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The OPA gain sits at the oscillation threshold (|sigma_+| too small): the
/// linear steady state diverges and nothing amplitude-dependent is defined.
class ParametricThreshold : public Error {
public:
    using Error::Error;
};

/// A resonance of the linearized system made a response denominator (or the
/// frequency-domain system matrix) numerically singular.
class SingularResponse : public Error {
public:
    using Error::Error;
};

/// The measured quadrature carries no force signal (F_f = 0).
class ZeroSignalGain : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double last_iterate, double bracket_lo, double bracket_hi)
        : Error(what), last_iterate(last_iterate), bracket_lo(bracket_lo), bracket_hi(bracket_hi) {}

    double last_iterate;
    double bracket_lo;
    double bracket_hi;
};

/// Every candidate in an optimization range was dynamically unstable.
class NoStablePoint : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration input. Line and column are 1-based,
/// zero when the error is not tied to a source position.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0, int column = 0)
        : Error(what), line(line), column(column) {}

    int line;
    int column;
};

}  // namespace sqcom
