#pragma once

// Scenario execution and trajectory CSV output.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "quadsim/integrator.hpp"
#include "quadsim/scenario.hpp"

namespace quadsim {

inline constexpr std::string_view kCsvHeader =
    "t,x,y,z,phi,theta,psi,xd,yd,zd,p,q,r,u1,u2,u3,u4";

/// Scientific notation with 17 significant digits, locale independent.
inline void append_number(std::string& out, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    out.append(buf, res.ptr);
}

inline std::string csv_row(const TrajectorySample& s) {
    std::string row;
    row.reserve(17 * 25);
    append_number(row, s.t);
    const StateVector v = s.state.vector();
    for (int i = 0; i < 12; ++i) {
        row.push_back(',');
        append_number(row, v[i]);
    }
    for (double u : s.u.u) {
        row.push_back(',');
        append_number(row, u);
    }
    return row;
}

inline void write_csv(std::ostream& os, const Trajectory& traj) {
    os << kCsvHeader << '\n';
    for (const auto& s : traj.samples) os << csv_row(s) << '\n';
}

struct RunSummary {
    State12 final_state;
    double wall_clock_seconds = 0.0;
    std::size_t step_count = 0;
    Termination termination = Termination::completed;
    double max_abs_pitch = 0.0;
    double final_time = 0.0;
    std::string message;
};

inline nlohmann::json to_json(const RunSummary& r) {
    const StateVector v = r.final_state.vector();
    std::vector<double> state(v.data(), v.data() + 12);
    nlohmann::json j = {
        {"termination", std::string(to_string(r.termination))},
        {"step_count", r.step_count},
        {"final_time", r.final_time},
        {"max_abs_pitch", r.max_abs_pitch},
        {"wall_clock_seconds", r.wall_clock_seconds},
        {"final_state", state},
    };
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

inline RunSummary summarize(const Trajectory& traj, double wall_clock_seconds) {
    RunSummary r;
    r.wall_clock_seconds = wall_clock_seconds;
    r.termination = traj.termination;
    r.message = traj.error;
    r.step_count = traj.samples.empty() ? 0 : traj.samples.size() - 1;
    if (!traj.samples.empty()) {
        r.final_state = traj.samples.back().state;
        r.final_time = traj.samples.back().t;
    }
    for (const auto& s : traj.samples)
        r.max_abs_pitch = std::max(r.max_abs_pitch, std::abs(s.state.attitude.pitch));
    return r;
}

/// Simulates the scenario and writes its trajectory to out_path. A
/// singularity stop is reported in the summary, with the partial trajectory
/// still written. Throws IoError if the CSV cannot be written.
inline RunSummary run(const Scenario& scenario, const std::string& out_path) {
    scenario.validate();
    const auto start = std::chrono::steady_clock::now();
    const Trajectory traj = simulate(scenario.initial, scenario.schedule, scenario.sim.dt,
                                     scenario.sim.duration, scenario.sim.method, scenario.params);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + out_path + "'");
    write_csv(out, traj);
    out.flush();
    if (!out) throw IoError("failed writing output file '" + out_path + "'");
    return summarize(traj, elapsed);
}

}  // namespace quadsim
