#pragma once

// Body angular velocity <-> ZYX Euler-angle rates.

#include <cmath>

#include "quadsim/errors.hpp"
#include "quadsim/geometry.hpp"

namespace quadsim {

/// Default lower bound on |cos(pitch)| for the inverse rate map.
inline constexpr double kDefaultSingularityTolerance = 1e-6;

/// Angular velocity expressed in body axes, rad/s.
struct BodyRates {
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;

    Vec3 vec() const { return {p, q, r}; }
    static BodyRates from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

/// Time derivatives of roll, pitch, yaw, rad/s.
struct EulerRates {
    double roll_rate = 0.0;
    double pitch_rate = 0.0;
    double yaw_rate = 0.0;

    Vec3 vec() const { return {roll_rate, pitch_rate, yaw_rate}; }
};

/// Matrix taking Euler rates to body rates. Defined for every attitude; it
/// loses rank at pitch = +/-pi/2.
inline Mat3 body_rates_matrix(const EulerAngles& a) {
    const double cf = std::cos(a.roll), sf = std::sin(a.roll);
    const double ct = std::cos(a.pitch), st = std::sin(a.pitch);
    Mat3 m;
    m << 1, 0, -st,
         0, cf, ct * sf,
         0, -sf, ct * cf;
    return m;
}

/// Matrix taking body rates to Euler rates. Throws GimbalSingularityError
/// when |cos(pitch)| < tol.
inline Mat3 euler_rates_matrix(const EulerAngles& a, double tol = kDefaultSingularityTolerance) {
    const double ct = std::cos(a.pitch);
    if (!(std::abs(ct) >= tol)) throw GimbalSingularityError(a.pitch);
    const double cf = std::cos(a.roll), sf = std::sin(a.roll);
    const double tt = std::tan(a.pitch), sec = 1.0 / ct;
    Mat3 m;
    m << 1, sf * tt, cf * tt,
         0, cf, -sf,
         0, sf * sec, cf * sec;
    return m;
}

inline BodyRates body_rates_from_euler_rates(const EulerAngles& a, const EulerRates& e) {
    const double cf = std::cos(a.roll), sf = std::sin(a.roll);
    const double ct = std::cos(a.pitch), st = std::sin(a.pitch);
    return {
        e.roll_rate - st * e.yaw_rate,
        cf * e.pitch_rate + ct * sf * e.yaw_rate,
        ct * cf * e.yaw_rate - sf * e.pitch_rate,
    };
}

inline EulerRates euler_rates_from_body_rates(const EulerAngles& a, const BodyRates& w,
                                              double tol = kDefaultSingularityTolerance) {
    const double ct = std::cos(a.pitch);
    if (!(std::abs(ct) >= tol)) throw GimbalSingularityError(a.pitch);
    const double cf = std::cos(a.roll), sf = std::sin(a.roll);
    const double tt = std::tan(a.pitch);
    return {
        w.p + w.q * sf * tt + w.r * cf * tt,
        w.q * cf - w.r * sf,
        (w.q * sf + w.r * cf) / ct,
    };
}

}  // namespace quadsim
