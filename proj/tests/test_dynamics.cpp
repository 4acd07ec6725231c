#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "quadsim/dynamics.hpp"

using namespace quadsim;
using std::numbers::pi;

namespace {

const VehicleParams kParams{};

EulerAngles random_attitude(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> full(-pi, pi), pitch(-1.5, 1.5);
    return {full(rng), pitch(rng), full(rng)};
}

}  // namespace

TEST(TranslationalAccel, FreeFall) {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
        const Vec3 a = translational_accel(random_attitude(rng), 0.0, kParams);
        EXPECT_EQ(a.x(), 0.0);
        EXPECT_EQ(a.y(), 0.0);
        EXPECT_EQ(a.z(), kParams.gravity);
    }
}

TEST(TranslationalAccel, HoverBalance) {
    const Vec3 a = translational_accel({0, 0, 0}, kParams.mass * kParams.gravity, kParams);
    EXPECT_EQ(a, Vec3::Zero());
}

TEST(TranslationalAccel, PitchedTrim) {
    for (double theta : {0.05, 0.2, -0.4, 1.0}) {
        const double thrust = kParams.mass * kParams.gravity / std::cos(theta);
        const Vec3 a = translational_accel({0, theta, 0}, thrust, kParams);
        EXPECT_NEAR(a.z(), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(a.x()), kParams.gravity * std::abs(std::tan(theta)), 1e-12);
        // Nose-down pitch (positive theta) drives the vehicle toward -x.
        EXPECT_LT(a.x() * theta, 0.0);
        EXPECT_EQ(a.y(), 0.0);
    }
}

TEST(TranslationalAccel, MatchesFrameTransformForm) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> thrust(0.0, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const EulerAngles a = random_attitude(rng);
        const double t = thrust(rng);
        const Vec3 closed = translational_accel(a, t, kParams);
        const Vec3 frame =
            Vec3(0, 0, kParams.gravity) + world_from_body(a) * Vec3(0, 0, -t) / kParams.mass;
        EXPECT_LT((closed - frame).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(TranslationalAccel, YawInvariance) {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> yaw(-pi, pi), thrust(0.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        EulerAngles a = random_attitude(rng);
        const double t = thrust(rng);
        const Vec3 base = translational_accel(a, t, kParams);
        a.yaw += yaw(rng);
        const Vec3 turned = translational_accel(a, t, kParams);
        EXPECT_NEAR(turned.z(), base.z(), 1e-12);
        EXPECT_NEAR(turned.head<2>().norm(), base.head<2>().norm(), 1e-12);
    }
}

TEST(GyroscopicTerm, Cases) {
    EXPECT_EQ(gyroscopic_term({0, 0, 0}, kParams.inertia), Vec3::Zero());
    const Vec3 g = gyroscopic_term({1, 1, 1}, InertiaTensor{1, 2, 3});
    EXPECT_EQ(g, Vec3(1, -2, 1));
    EXPECT_EQ(gyroscopic_term({0.3, -2, 7}, InertiaTensor{2, 2, 2}), Vec3::Zero());
}

TEST(GyroscopicTerm, MatchesBruteForceCross) {
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> rate(-10, 10), inertia(1e-3, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const BodyRates w{rate(rng), rate(rng), rate(rng)};
        const InertiaTensor in{inertia(rng), inertia(rng), inertia(rng)};
        const oracle::V3 ref = oracle::gyroscopic({w.p, w.q, w.r}, {in.ixx, in.iyy, in.izz});
        const Vec3 g = gyroscopic_term(w, in);
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(g[k], ref[k], 1e-12);
    }
}

TEST(AngularAccel, GyroscopicTorqueCancels) {
    const BodyRates w{0.7, -1.3, 2.2};
    const Vec3 a = angular_accel(w, gyroscopic_term(w, kParams.inertia), kParams.inertia);
    EXPECT_EQ(a, Vec3::Zero());
}

TEST(AngularAccel, SingleAxis) {
    const Vec3 a = angular_accel({0, 0, 0}, Vec3(1, 0, 0), InertiaTensor{2, 2, 2});
    EXPECT_EQ(a, Vec3(0.5, 0, 0));
}

TEST(AngularAccel, PitchRowUsesFullCrossProduct) {
    // q' = (tau_y + (Izz - Ixx) r p) / Iyy.
    const InertiaTensor in{1, 2, 4};
    const Vec3 a = angular_accel({1, 0, 1}, Vec3::Zero(), in);
    EXPECT_DOUBLE_EQ(a.y(), (4.0 - 1.0) * 1 * 1 / 2.0);
}

TEST(AngularAccel, TorqueFreeConservation) {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> rate(-10, 10), inertia(1e-3, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const BodyRates w{rate(rng), rate(rng), rate(rng)};
        InertiaTensor in{inertia(rng), inertia(rng), inertia(rng)};
        const Vec3 wd = angular_accel(w, Vec3::Zero(), in);
        const Vec3 iw = in.diagonal().cwiseProduct(w.vec());
        const Vec3 iwd = in.diagonal().cwiseProduct(wd);
        // d/dt (1/2 w^T I w) and d/dt |I w|^2 / 2.
        const double scale = iw.norm() * w.vec().norm() * w.vec().norm();
        EXPECT_NEAR(w.vec().dot(iwd), 0.0, 1e-10 * std::max(1.0, scale));
        EXPECT_NEAR(iw.dot(iwd), 0.0, 1e-10 * std::max(1.0, scale));
    }
}

TEST(StateDerivative, HoverIsExactlyZero) {
    const StateDeriv d = state_derivative(State12{}, hover_input(kParams), kParams);
    const StateVector v = d.vector();
    for (int i = 0; i < 12; ++i) EXPECT_EQ(v[i], 0.0) << "slot " << i;
}

TEST(StateDerivative, FreeFallOnlyVerticalAcceleration) {
    const StateVector v = state_derivative(State12{}, ControlInput{}, kParams).vector();
    for (int i = 0; i < 12; ++i) {
        if (i == kZDot)
            EXPECT_EQ(v[i], kParams.gravity);
        else
            EXPECT_EQ(v[i], 0.0) << "slot " << i;
    }
}

TEST(StateDerivative, RollRateFeedsRollAngle) {
    State12 s;
    s.rates.p = 1.0;
    const StateVector v = state_derivative(s, hover_input(kParams), kParams).vector();
    EXPECT_EQ(v[kRoll], 1.0);
    EXPECT_EQ(v[kPitch], 0.0);
    EXPECT_EQ(v[kYaw], 0.0);
    for (int i : {kXDot, kYDot, kZDot, kP, kQ, kR}) EXPECT_EQ(v[i], 0.0) << "slot " << i;
}

TEST(StateDerivative, VelocityFeedsPosition) {
    State12 s;
    s.velocity = Vec3(1, -2, 3);
    const StateVector v = state_derivative(s, hover_input(kParams), kParams).vector();
    EXPECT_EQ(v.segment<3>(kX), Vec3(1, -2, 3));
}

TEST(StateDerivative, Errors) {
    State12 s;
    s.attitude.pitch = pi / 2;
    EXPECT_THROW(state_derivative(s, ControlInput{}, kParams), GimbalSingularityError);
    s.attitude.pitch = 2.0;
    EXPECT_THROW(state_derivative(s, ControlInput{}, kParams), GimbalSingularityError);
    s.attitude.pitch = 0.0;
    s.position.x() = std::nan("");
    EXPECT_THROW(state_derivative(s, ControlInput{}, kParams), InvalidStateError);
    EXPECT_THROW(state_derivative(State12{}, ControlInput{{-1, 0, 0, 0}}, kParams),
                 InvalidStateError);
}

TEST(State12, VectorRoundTrip) {
    StateVector v;
    for (int i = 0; i < 12; ++i) v[i] = 0.5 * i - 2.0;
    EXPECT_EQ(State12::from_vector(v).vector(), v);
    const State12 s = State12::from_vector(v);
    EXPECT_EQ(s.attitude.pitch, v[kPitch]);
    EXPECT_EQ(s.rates.r, v[kR]);
}
