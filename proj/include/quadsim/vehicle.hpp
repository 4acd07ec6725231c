#pragma once

#include <cmath>
#include <string>

#include "quadsim/errors.hpp"
#include "quadsim/geometry.hpp"

namespace quadsim {

/// Diagonal body inertia, kg*m^2.
struct InertiaTensor {
    double ixx = 5.0e-3;
    double iyy = 5.0e-3;
    double izz = 9.0e-3;

    Vec3 diagonal() const { return {ixx, iyy, izz}; }
    Mat3 matrix() const { return diagonal().asDiagonal(); }

    /// Positive entries satisfying the triangle inequalities of a real body.
    void validate() const {
        if (!(std::isfinite(ixx) && ixx > 0)) throw InvalidParamsError("ixx must be > 0");
        if (!(std::isfinite(iyy) && iyy > 0)) throw InvalidParamsError("iyy must be > 0");
        if (!(std::isfinite(izz) && izz > 0)) throw InvalidParamsError("izz must be > 0");
        if (ixx + iyy < izz || iyy + izz < ixx || izz + ixx < iyy)
            throw InvalidParamsError("inertia must satisfy the triangle inequalities");
    }
};

/// Physical constants of the vehicle. Defaults describe a generic ~0.5 kg
/// micro quadrotor; every field can be overridden from a scenario.
struct VehicleParams {
    double mass = 0.5;            // kg
    InertiaTensor inertia;        // kg*m^2
    double thrust_coeff = 3.0e-6; // Ka, N*s^2/rad^2
    double moment_coeff = 1.1e-7; // Km, N*m*s^2/rad^2
    double arm_length = 0.25;     // m
    double gravity = 9.81;        // m/s^2

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(std::isfinite(v) && v > 0))
                throw InvalidParamsError(std::string(name) + " must be > 0");
        };
        positive(mass, "m");
        positive(thrust_coeff, "ka");
        positive(moment_coeff, "km");
        positive(arm_length, "l");
        positive(gravity, "g");
        inertia.validate();
    }
};

}  // namespace quadsim
