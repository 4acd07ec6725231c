#pragma once

// Rotation matrices, rigid transforms and ZYX Euler-angle extraction.
//
// Column-vector convention throughout: v_world = R * v_body.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "quadsim/errors.hpp"

namespace quadsim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// |R31| within this distance of 1 takes the gimbal-lock branch.
inline constexpr double kGimbalLockEpsilon = 1e-9;
/// Orthonormality slack accepted by consumers of caller-supplied matrices.
inline constexpr double kRotationInputTolerance = 1e-6;

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

/// 3x3 attitude matrix. Instances built by the factories in this header are
/// proper rotations; `unchecked` wraps arbitrary matrices for testing rigidity.
class RotationMatrix {
public:
    RotationMatrix() : m_(Mat3::Identity()) {}

    static RotationMatrix unchecked(const Mat3& m) { return RotationMatrix(m); }

    /// Throws InvalidRotationError unless m is orthonormal with det +1 within tol.
    static RotationMatrix from_matrix(const Mat3& m, double tol = kRotationInputTolerance) {
        RotationMatrix r(m);
        r.validate(tol);
        return r;
    }

    static RotationMatrix identity() { return RotationMatrix(); }

    const Mat3& matrix() const { return m_; }

    /// Zero-based element access; R31 of the usual notation is (2, 0).
    double operator()(int row, int col) const { return m_(row, col); }

    RotationMatrix transpose() const { return RotationMatrix(m_.transpose()); }

    /// max |R R^T - I| over all entries.
    double orthonormality_error() const {
        return (m_ * m_.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
    }

    double determinant() const { return m_.determinant(); }

    void validate(double tol = kRotationInputTolerance) const {
        if (!m_.allFinite()) throw InvalidRotationError("rotation has non-finite entries");
        if (orthonormality_error() > tol)
            throw InvalidRotationError("rotation is not orthonormal: max |R R^T - I| = " +
                                       std::to_string(orthonormality_error()));
        if (std::abs(determinant() - 1.0) > tol)
            throw InvalidRotationError("rotation determinant is " + std::to_string(determinant()) +
                                       ", expected +1");
    }

    friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
        return RotationMatrix(a.m_ * b.m_);
    }
    friend Vec3 operator*(const RotationMatrix& r, const Vec3& v) { return r.m_ * v; }

private:
    explicit RotationMatrix(const Mat3& m) : m_(m) {}

    Mat3 m_;
};

struct RigidTransform {
    RotationMatrix rotation;
    Vec3 translation = Vec3::Zero();
};

/// ZYX roll-pitch-yaw, radians.
struct EulerAngles {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

/// Result of extracting Euler angles from a rotation. Away from gimbal lock
/// there are two triplets producing the same matrix; at lock only one is
/// reported, with yaw pinned to zero.
struct EulerSolutions {
    EulerAngles primary;
    std::optional<EulerAngles> secondary;
    bool gimbal_locked = false;
};

inline RotationMatrix rot_x(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 m;
    m << 1, 0, 0,
         0, c, -s,
         0, s, c;
    return RotationMatrix::unchecked(m);
}

inline RotationMatrix rot_y(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 m;
    m << c, 0, s,
         0, 1, 0,
         -s, 0, c;
    return RotationMatrix::unchecked(m);
}

inline RotationMatrix rot_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 m;
    m << c, -s, 0,
         s, c, 0,
         0, 0, 1;
    return RotationMatrix::unchecked(m);
}

/// Rz(yaw) * Ry(pitch) * Rx(roll), expanded entrywise. Maps body-frame
/// vectors into the world frame.
inline RotationMatrix world_from_body(const EulerAngles& a) {
    const double cf = std::cos(a.roll), sf = std::sin(a.roll);
    const double ct = std::cos(a.pitch), st = std::sin(a.pitch);
    const double cp = std::cos(a.yaw), sp = std::sin(a.yaw);
    Mat3 m;
    m << ct * cp, cp * st * sf - cf * sp, sf * sp + cf * cp * st,
         ct * sp, cf * cp + st * sf * sp, cf * st * sp - cp * sf,
         -st,     ct * sf,                ct * cf;
    return RotationMatrix::unchecked(m);
}

inline RotationMatrix body_from_world(const EulerAngles& a) {
    return world_from_body(a).transpose();
}

inline Vec3 apply_transform(const RigidTransform& t, const Vec3& p) {
    return t.rotation * p + t.translation;
}

/// Checks the three conditions for a rigid motion: orthonormal columns,
/// preserved lengths and preserved cross products (the last rejects
/// reflections). Lengths and cross products are probed on a fixed vector set.
inline bool is_rigid(const RigidTransform& t, double tol) {
    const Mat3& m = t.rotation.matrix();
    if (!m.allFinite() || !t.translation.allFinite()) return false;

    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(m.col(i).dot(m.col(j)) - expected) > tol) return false;
        }
    }

    static const std::array<Vec3, 6> probes = {
        Vec3(1, 0, 0),     Vec3(0, 1, 0),      Vec3(0, 0, 1),
        Vec3(1, 2, 3),     Vec3(-0.5, 0.25, 2), Vec3(3, -1, 0.5),
    };
    for (const Vec3& v : probes) {
        if (std::abs((m * v).norm() - v.norm()) > tol * std::max(1.0, v.norm())) return false;
    }
    for (const Vec3& v : probes) {
        for (const Vec3& w : probes) {
            const Vec3 lhs = (m * v).cross(m * w);
            const Vec3 rhs = m * v.cross(w);
            if ((lhs - rhs).cwiseAbs().maxCoeff() > tol * std::max(1.0, v.norm() * w.norm()))
                return false;
        }
    }
    return true;
}

/// Recovers ZYX Euler angles from a world-from-body rotation.
///
/// Pitch comes from R31 = -sin(pitch); the second solution uses
/// pi - pitch. Roll and yaw use atan2 of entries divided by cos(pitch), which
/// keeps the quadrant right when cos(pitch) < 0. When |R31| reaches 1 only the
/// sum or difference of roll and yaw is observable; yaw is then set to zero and
/// roll absorbs the combination, read from R22 = cos(roll), R23 = -sin(roll).
///
/// Throws InvalidRotationError if R is not a rotation within 1e-6.
inline EulerSolutions euler_from_rotation(const RotationMatrix& r) {
    r.validate(kRotationInputTolerance);
    const double r31 = r(2, 0);

    EulerSolutions out;
    if (std::abs(r31) >= 1.0 - kGimbalLockEpsilon) {
        const double clamped = std::clamp(r31, -1.0, 1.0);
        out.gimbal_locked = true;
        out.primary.pitch = -std::asin(clamped);
        out.primary.yaw = 0.0;
        out.primary.roll = wrap_angle(std::atan2(-r(1, 2), r(1, 1)));
        return out;
    }

    auto solve = [&](double pitch) {
        const double c = std::cos(pitch);
        EulerAngles a;
        a.pitch = wrap_angle(pitch);
        a.roll = wrap_angle(std::atan2(r(2, 1) / c, r(2, 2) / c));
        a.yaw = wrap_angle(std::atan2(r(1, 0) / c, r(0, 0) / c));
        return a;
    };
    const double pitch1 = -std::asin(r31);
    out.primary = solve(pitch1);
    out.secondary = solve(std::numbers::pi - pitch1);
    return out;
}

}  // namespace quadsim
