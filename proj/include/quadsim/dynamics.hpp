#pragma once

// Newton-Euler equations of motion and the 12-state model X' = f(X, U).
//
// World frame is NED (z down, gravity along +z). Thrust acts along body -z.

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "quadsim/errors.hpp"
#include "quadsim/euler_kinematics.hpp"
#include "quadsim/geometry.hpp"
#include "quadsim/rotor_model.hpp"
#include "quadsim/vehicle.hpp"

namespace quadsim {

using StateVector = Eigen::Matrix<double, 12, 1>;

/// Slot order shared by the state vector, CSV columns and scenario files.
enum StateSlot : int {
    kX = 0, kY, kZ,
    kRoll, kPitch, kYaw,
    kXDot, kYDot, kZDot,
    kP, kQ, kR,
};

/// Vehicle state. Slots 10-12 hold body rates (p, q, r); attitude
/// propagates through the Euler-rate map.
struct State12 {
    Vec3 position = Vec3::Zero();  // m, NED
    EulerAngles attitude;          // rad
    Vec3 velocity = Vec3::Zero();  // m/s, world frame
    BodyRates rates;               // rad/s, body frame

    StateVector vector() const {
        StateVector v;
        v << position, attitude.roll, attitude.pitch, attitude.yaw, velocity, rates.p, rates.q,
            rates.r;
        return v;
    }

    static State12 from_vector(const StateVector& v) {
        State12 s;
        s.position = v.segment<3>(kX);
        s.attitude = {v[kRoll], v[kPitch], v[kYaw]};
        s.velocity = v.segment<3>(kXDot);
        s.rates = {v[kP], v[kQ], v[kR]};
        return s;
    }

    bool finite() const { return vector().allFinite(); }
};

/// Time derivative of State12, slot for slot.
struct StateDeriv {
    Vec3 velocity = Vec3::Zero();
    EulerRates attitude_rate;
    Vec3 acceleration = Vec3::Zero();
    Vec3 angular_accel = Vec3::Zero();

    StateVector vector() const {
        StateVector v;
        v << velocity, attitude_rate.vec(), acceleration, angular_accel;
        return v;
    }
};

/// World-frame linear acceleration under gravity and collective thrust.
/// z uses (m*g - T*cos(roll)*cos(pitch))/m so that balanced hover cancels
/// to exactly zero.
inline Vec3 translational_accel(const EulerAngles& a, double thrust, const VehicleParams& p) {
    const double cf = std::cos(a.roll), sf = std::sin(a.roll);
    const double ct = std::cos(a.pitch), st = std::sin(a.pitch);
    const double cp = std::cos(a.yaw), sp = std::sin(a.yaw);
    const double k = thrust / p.mass;
    return {
        -k * (cf * st * cp + sf * sp),
        -k * (cf * st * sp - sf * cp),
        (p.mass * p.gravity - thrust * (cf * ct)) / p.mass,
    };
}

/// omega x (I omega) for a diagonal inertia.
inline Vec3 gyroscopic_term(const BodyRates& w, const InertiaTensor& in) {
    return {
        (in.izz - in.iyy) * w.q * w.r,
        (in.ixx - in.izz) * w.r * w.p,
        (in.iyy - in.ixx) * w.p * w.q,
    };
}

/// Euler's rotational equation solved for body angular acceleration:
/// I^-1 (tau - omega x (I omega)).
inline Vec3 angular_accel(const BodyRates& w, const Vec3& torque, const InertiaTensor& in) {
    return (torque - gyroscopic_term(w, in)).cwiseQuotient(in.diagonal());
}

/// Assembled right-hand side f(X, U). Throws InvalidStateError for
/// non-finite states and GimbalSingularityError when |pitch| >= pi/2 or
/// |cos(pitch)| < tol.
inline StateDeriv state_derivative(const State12& s, const ControlInput& u, const VehicleParams& p,
                                   double tol = kDefaultSingularityTolerance) {
    if (!s.finite()) throw InvalidStateError("state has non-finite components");
    if (!u.valid()) throw InvalidStateError("control input must be finite and non-negative");
    if (!(std::abs(s.attitude.pitch) < std::numbers::pi / 2))
        throw GimbalSingularityError(s.attitude.pitch);

    const Wrench w = wrench_from_input(u, p);
    StateDeriv d;
    d.velocity = s.velocity;
    d.attitude_rate = euler_rates_from_body_rates(s.attitude, s.rates, tol);
    d.acceleration = translational_accel(s.attitude, w.thrust, p);
    d.angular_accel = angular_accel(s.rates, w.torque, p.inertia);
    return d;
}

}  // namespace quadsim
