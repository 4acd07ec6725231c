#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix handed to a rotation consumer is not orthonormal with det +1.
class InvalidRotationError : public Error {
public:
    using Error::Error;
};

/// Euler-rate map evaluated where cos(pitch) vanishes (gimbal lock).
class GimbalSingularityError : public Error {
public:
    explicit GimbalSingularityError(double pitch)
        : Error("gimbal singularity: pitch " + std::to_string(pitch) +
                " rad is too close to +/-pi/2"),
          pitch_(pitch) {}

    double pitch() const noexcept { return pitch_; }

private:
    double pitch_;
};

/// Requested wrench needs a negative squared rotor speed.
class InfeasibleWrenchError : public Error {
public:
    InfeasibleWrenchError(std::size_t rotor, double value)
        : Error("infeasible wrench: u" + std::to_string(rotor + 1) + " = " +
                std::to_string(value) + " < 0"),
          rotor_(rotor),
          value_(value) {}

    /// Zero-based index of the offending rotor.
    std::size_t rotor() const noexcept { return rotor_; }
    double value() const noexcept { return value_; }

private:
    std::size_t rotor_;
    double value_;
};

class InvalidStateError : public Error {
public:
    using Error::Error;
};

class InvalidParamsError : public Error {
public:
    using Error::Error;
};

class InvalidScheduleError : public Error {
public:
    using Error::Error;
};

}  // namespace quadsim
