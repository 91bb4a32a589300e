#pragma once

#include <stdexcept>
#include <string>

namespace jcps {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Fock cutoff discards more probability mass than the requested bound.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double tail_mass)
        : Error(what), tail_mass_(tail_mass) {}
    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

/// A numerical kernel failed to converge or produced a degenerate result.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid user-supplied parameters or configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mandel Q requested for a state with zero mean photon number.
class UndefinedMeanError : public Error {
public:
    using Error::Error;
};

}  // namespace jcps
