#pragma once

// Quad-X rotor mixing. Rotor 1 sits on +X, 2 on +Y, 3 on -X, 4 on -Y; rotors 1
// and 3 spin one way, 2 and 4 the other. Every rotor pushes along body -Z.

#include <array>
#include <cmath>
#include <limits>

#include "quadsim/errors.hpp"
#include "quadsim/vehicle.hpp"

namespace quadsim {

/// Rotor angular speeds, rad/s.
struct RotorSpeeds {
    std::array<double, 4> omega{};
};

/// Squared rotor speeds, rad^2/s^2. This is the system input vector.
struct ControlInput {
    std::array<double, 4> u{};

    double operator[](std::size_t i) const { return u[i]; }
    double& operator[](std::size_t i) { return u[i]; }

    static ControlInput from_speeds(const RotorSpeeds& s) {
        ControlInput c;
        for (std::size_t i = 0; i < 4; ++i) c.u[i] = s.omega[i] * s.omega[i];
        return c;
    }

    bool valid() const {
        for (double v : u)
            if (!(std::isfinite(v) && v >= 0)) return false;
        return true;
    }

    friend bool operator==(const ControlInput&, const ControlInput&) = default;
};

/// Collective thrust magnitude (acting along body -Z) and body torques.
struct Wrench {
    double thrust = 0.0;  // N
    Vec3 torque = Vec3::Zero();  // N*m
};

inline Wrench wrench_from_input(const ControlInput& c, const VehicleParams& p) {
    const auto& u = c.u;
    Wrench w;
    // Pairwise sum keeps four equal inputs exact.
    w.thrust = p.thrust_coeff * ((u[0] + u[1]) + (u[2] + u[3]));
    w.torque.x() = p.thrust_coeff * p.arm_length * (u[3] - u[1]);
    w.torque.y() = p.thrust_coeff * p.arm_length * (u[0] - u[2]);
    w.torque.z() = p.moment_coeff * ((u[0] - u[1]) + (u[2] - u[3]));
    return w;
}

/// Inverse of wrench_from_input. Throws InfeasibleWrenchError when a rotor
/// would need a negative squared speed.
inline ControlInput input_from_wrench(const Wrench& w, const VehicleParams& p) {
    const double collective = w.thrust / (4.0 * p.thrust_coeff);
    const double roll = w.torque.x() / (2.0 * p.thrust_coeff * p.arm_length);
    const double pitch = w.torque.y() / (2.0 * p.thrust_coeff * p.arm_length);
    const double yaw = w.torque.z() / (4.0 * p.moment_coeff);

    ControlInput c;
    c.u = {
        collective + pitch + yaw,
        collective - roll - yaw,
        collective - pitch + yaw,
        collective + roll - yaw,
    };
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(c.u[i] >= 0)) throw InfeasibleWrenchError(i, c.u[i]);
    }
    return c;
}

/// Equal squared speeds whose collective thrust balances weight. The value is
/// the representable neighbour of m*g/(4*Ka) whose mixed thrust reproduces
/// m*g exactly when one exists, so hover is an exact fixed point.
inline ControlInput hover_input(const VehicleParams& p) {
    const double weight = p.mass * p.gravity;
    const double nominal = weight / (4.0 * p.thrust_coeff);
    auto thrust_of = [&](double v) { return wrench_from_input(ControlInput{{v, v, v, v}}, p).thrust; };

    double best = nominal;
    if (thrust_of(nominal) != weight) {
        double lo = nominal, hi = nominal;
        for (int k = 0; k < 8; ++k) {
            lo = std::nextafter(lo, 0.0);
            hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
            if (thrust_of(lo) == weight) { best = lo; break; }
            if (thrust_of(hi) == weight) { best = hi; break; }
        }
    }
    return ControlInput{{best, best, best, best}};
}

}  // namespace quadsim
