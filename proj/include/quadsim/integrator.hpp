#pragma once

// Fixed-step explicit integration of the 12-state model.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadsim/dynamics.hpp"
#include "quadsim/errors.hpp"

namespace quadsim {

enum class IntegrationMethod { euler, rk4 };

inline std::string_view to_string(IntegrationMethod m) {
    return m == IntegrationMethod::euler ? "euler" : "rk4";
}

inline std::optional<IntegrationMethod> parse_method(std::string_view s) {
    if (s == "euler") return IntegrationMethod::euler;
    if (s == "rk4") return IntegrationMethod::rk4;
    return std::nullopt;
}

/// Piecewise-constant input: each entry holds from its start time until the
/// next entry begins.
struct ScheduleEntry {
    double t_start = 0.0;
    ControlInput u;

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

class InputSchedule {
public:
    InputSchedule() = default;
    explicit InputSchedule(std::vector<ScheduleEntry> entries) : entries_(std::move(entries)) {
        validate();
    }

    static InputSchedule constant(const ControlInput& u) { return InputSchedule({{0.0, u}}); }

    const std::vector<ScheduleEntry>& entries() const { return entries_; }

    /// Nonempty, first entry at t = 0, start times strictly increasing, inputs valid.
    void validate() const {
        if (entries_.empty()) throw InvalidScheduleError("schedule must not be empty");
        if (entries_.front().t_start != 0.0)
            throw InvalidScheduleError("schedule must start at t = 0");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (!std::isfinite(entries_[i].t_start))
                throw InvalidScheduleError("schedule time must be finite");
            if (!entries_[i].u.valid())
                throw InvalidScheduleError("schedule entry " + std::to_string(i) +
                                           ": inputs must be finite and >= 0");
            if (i > 0 && !(entries_[i].t_start > entries_[i - 1].t_start))
                throw InvalidScheduleError("schedule times must be strictly increasing");
        }
    }

    /// Input of the last entry whose start time is <= t. Start times within
    /// `slack` of t count as reached, so switches land on grid points that
    /// accumulate rounding.
    const ControlInput& input_at(double t, double slack = 0.0) const {
        auto it = std::upper_bound(entries_.begin(), entries_.end(), t + slack,
                                   [](double v, const ScheduleEntry& e) { return v < e.t_start; });
        if (it == entries_.begin()) return entries_.front().u;
        return std::prev(it)->u;
    }

    friend bool operator==(const InputSchedule&, const InputSchedule&) = default;

private:
    std::vector<ScheduleEntry> entries_;
};

inline State12 step_euler(const State12& s, const ControlInput& u, double dt,
                          const VehicleParams& p) {
    return State12::from_vector(s.vector() + dt * state_derivative(s, u, p).vector());
}

/// Classical four-stage Runge-Kutta with u held over the step.
inline State12 step_rk4(const State12& s, const ControlInput& u, double dt,
                        const VehicleParams& p) {
    const StateVector x = s.vector();
    auto f = [&](const StateVector& v) {
        return state_derivative(State12::from_vector(v), u, p).vector();
    };
    const StateVector k1 = f(x);
    const StateVector k2 = f(x + 0.5 * dt * k1);
    const StateVector k3 = f(x + 0.5 * dt * k2);
    const StateVector k4 = f(x + dt * k3);
    return State12::from_vector(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

inline State12 step(IntegrationMethod m, const State12& s, const ControlInput& u, double dt,
                    const VehicleParams& p) {
    return m == IntegrationMethod::euler ? step_euler(s, u, dt, p) : step_rk4(s, u, dt, p);
}

struct TrajectorySample {
    double t = 0.0;
    State12 state;
    ControlInput u;  // input applied from this sample onward
};

enum class Termination { completed, singularity };

inline std::string_view to_string(Termination t) {
    return t == Termination::completed ? "completed" : "singularity";
}

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Termination termination = Termination::completed;
    std::string error;  // set when termination != completed

    /// Time of the last recorded (valid) sample.
    double last_valid_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Number of full dt steps in duration and whether a shortened final step is
/// needed. Ratios within 1e-9 of an integer count as exact multiples.
struct StepPlan {
    long long full_steps = 0;
    double remainder = 0.0;
};

inline StepPlan plan_steps(double dt, double duration) {
    const double ratio = duration / dt;
    const double nearest = std::round(ratio);
    StepPlan plan;
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
        plan.full_steps = static_cast<long long>(nearest);
    } else {
        plan.full_steps = static_cast<long long>(std::floor(ratio));
        plan.remainder = duration - static_cast<double>(plan.full_steps) * dt;
    }
    return plan;
}

/// Integrates from t = 0 to duration and records every step. A state the
/// dynamics reject (pitch reaching +/-pi/2) ends the run early; the
/// trajectory then holds every sample up to the last valid one and
/// termination == singularity.
///
/// Throws InvalidScheduleError / InvalidParamsError / InvalidStateError on
/// bad arguments.
inline Trajectory simulate(const State12& initial, const InputSchedule& schedule, double dt,
                           double duration, IntegrationMethod method, const VehicleParams& params) {
    if (!(std::isfinite(dt) && dt > 0)) throw InvalidScheduleError("dt must be > 0");
    if (!(std::isfinite(duration) && duration >= dt))
        throw InvalidScheduleError("duration must be >= dt");
    schedule.validate();
    params.validate();
    if (!initial.finite()) throw InvalidStateError("initial state has non-finite components");

    const StepPlan plan = plan_steps(dt, duration);
    const double slack = 1e-9 * dt;

    Trajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(plan.full_steps) + 2);
    traj.samples.push_back({0.0, initial, schedule.input_at(0.0, slack)});

    auto advance = [&](double h, double t_next) -> bool {
        const TrajectorySample& last = traj.samples.back();
        try {
            State12 next = step(method, last.state, last.u, h, params);
            if (!(std::abs(next.attitude.pitch) < std::numbers::pi / 2) ||
                !(std::abs(std::cos(next.attitude.pitch)) >= kDefaultSingularityTolerance))
                throw GimbalSingularityError(next.attitude.pitch);
            if (!next.finite()) throw InvalidStateError("integration produced a non-finite state");
            traj.samples.push_back({t_next, next, schedule.input_at(t_next, slack)});
            return true;
        } catch (const GimbalSingularityError& e) {
            traj.termination = Termination::singularity;
            traj.error = std::string(e.what()) + " after t = " + std::to_string(last.t);
            return false;
        }
    };

    for (long long k = 1; k <= plan.full_steps; ++k) {
        const bool final = (k == plan.full_steps && plan.remainder == 0.0);
        const double t = final ? duration : static_cast<double>(k) * dt;
        if (!advance(dt, t)) return traj;
    }
    if (plan.remainder > 0.0) advance(plan.remainder, duration);
    return traj;
}

}  // namespace quadsim
