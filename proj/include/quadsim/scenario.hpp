#pragma once

// Scenario files: strict JSON schema, built-in presets and serialization.
//
//   {
//     "params":   {"m":..,"ixx":..,"iyy":..,"izz":..,"ka":..,"km":..,"l":..,"g":..},
//     "initial":  [x,y,z,phi,theta,psi,xd,yd,zd,p,q,r],
//     "schedule": [{"t": 0.0, "u": [u1,u2,u3,u4]}, ...]   or   "preset": "<name>",
//     "sim":      {"dt":..,"duration":..,"method":"euler"|"rk4"}
//   }
//
// Every key is optional except that one of schedule/preset must be present.
// Unknown keys are rejected.

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "quadsim/dynamics.hpp"
#include "quadsim/errors.hpp"
#include "quadsim/integrator.hpp"
#include "quadsim/rotor_model.hpp"
#include "quadsim/vehicle.hpp"

namespace quadsim {

/// Malformed or invalid scenario document.
class ScenarioError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

struct SimSettings {
    double dt = 1e-3;
    double duration = 1.0;
    IntegrationMethod method = IntegrationMethod::rk4;

    friend bool operator==(const SimSettings&, const SimSettings&) = default;
};

struct Scenario {
    VehicleParams params;
    State12 initial;
    InputSchedule schedule;
    SimSettings sim;

    /// Throws ScenarioError naming the first violated invariant.
    void validate() const {
        try {
            params.validate();
            schedule.validate();
        } catch (const Error& e) {
            throw ScenarioError(e.what());
        }
        if (!initial.finite()) throw ScenarioError("initial state must be finite");
        if (!(std::isfinite(sim.dt) && sim.dt > 0)) throw ScenarioError("dt must be > 0");
        if (!(std::isfinite(sim.duration) && sim.duration >= sim.dt))
            throw ScenarioError("duration must be >= dt");
    }
};

inline const std::array<std::string_view, 4>& preset_names() {
    static const std::array<std::string_view, 4> names = {"hover", "free_fall", "yaw_step",
                                                          "forward_flight"};
    return names;
}

/// Yaw torque commanded by the yaw_step preset after t = 1 s, N*m.
inline constexpr double kYawStepTorque = 1e-3;
/// Trim pitch of the forward_flight preset, rad.
inline constexpr double kForwardFlightPitch = 0.2;

/// Builds a preset for the given vehicle. Inputs go through input_from_wrench
/// so the allocation path is exercised.
inline Scenario make_preset(std::string_view name, const VehicleParams& params = {}) {
    Scenario s;
    s.params = params;
    const double weight = params.mass * params.gravity;
    if (name == "hover") {
        s.schedule = InputSchedule::constant(hover_input(params));
        s.sim.duration = 5.0;
    } else if (name == "free_fall") {
        s.schedule = InputSchedule::constant(ControlInput{});
        s.sim.duration = 1.0;
    } else if (name == "yaw_step") {
        Wrench yaw;
        yaw.thrust = weight;
        yaw.torque.z() = kYawStepTorque;
        s.schedule = InputSchedule({{0.0, hover_input(params)},
                                    {1.0, input_from_wrench(yaw, params)}});
        s.sim.duration = 3.0;
    } else if (name == "forward_flight") {
        Wrench trim;
        trim.thrust = weight / std::cos(kForwardFlightPitch);
        s.initial.attitude.pitch = kForwardFlightPitch;
        s.schedule = InputSchedule::constant(input_from_wrench(trim, params));
        s.sim.duration = 2.0;
    } else {
        throw ScenarioError("unknown preset '" + std::string(name) + "'");
    }
    return s;
}

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw ScenarioError(where + ": unknown key '" + key + "'");
    }
}

inline double get_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ScenarioError(field + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(field + ": must be finite");
    return d;
}

inline const json& require_object(const json& v, const std::string& field) {
    if (!v.is_object()) throw ScenarioError(field + ": expected an object");
    return v;
}

inline const json& require_array(const json& v, std::size_t size, const std::string& field) {
    if (!v.is_array()) throw ScenarioError(field + ": expected an array");
    if (size != 0 && v.size() != size)
        throw ScenarioError(field + ": expected " + std::to_string(size) + " elements, got " +
                            std::to_string(v.size()));
    return v;
}

inline VehicleParams parse_params(const json& j) {
    require_object(j, "params");
    reject_unknown_keys(j, {"m", "ixx", "iyy", "izz", "ka", "km", "l", "g"}, "params");
    VehicleParams p;
    auto read = [&](const char* key, double& dst) {
        if (j.contains(key)) dst = get_number(j.at(key), std::string("params.") + key);
    };
    read("m", p.mass);
    read("ixx", p.inertia.ixx);
    read("iyy", p.inertia.iyy);
    read("izz", p.inertia.izz);
    read("ka", p.thrust_coeff);
    read("km", p.moment_coeff);
    read("l", p.arm_length);
    read("g", p.gravity);
    return p;
}

inline State12 parse_initial(const json& j) {
    require_array(j, 12, "initial");
    StateVector v;
    for (int i = 0; i < 12; ++i) v[i] = get_number(j[i], "initial[" + std::to_string(i) + "]");
    return State12::from_vector(v);
}

inline InputSchedule parse_schedule(const json& j) {
    require_array(j, 0, "schedule");
    std::vector<ScheduleEntry> entries;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "schedule[" + std::to_string(i) + "]";
        const json& e = require_object(j[i], where);
        reject_unknown_keys(e, {"t", "u"}, where);
        if (!e.contains("t")) throw ScenarioError(where + ": missing key 't'");
        if (!e.contains("u")) throw ScenarioError(where + ": missing key 'u'");
        ScheduleEntry entry;
        entry.t_start = get_number(e.at("t"), where + ".t");
        const json& u = require_array(e.at("u"), 4, where + ".u");
        for (std::size_t k = 0; k < 4; ++k)
            entry.u[k] = get_number(u[k], where + ".u[" + std::to_string(k) + "]");
        entries.push_back(entry);
    }
    try {
        return InputSchedule(std::move(entries));
    } catch (const InvalidScheduleError& e) {
        throw ScenarioError(e.what());
    }
}

inline void parse_sim(const json& j, SimSettings& sim) {
    require_object(j, "sim");
    reject_unknown_keys(j, {"dt", "duration", "method"}, "sim");
    if (j.contains("dt")) sim.dt = get_number(j.at("dt"), "sim.dt");
    if (j.contains("duration")) sim.duration = get_number(j.at("duration"), "sim.duration");
    if (j.contains("method")) {
        const json& m = j.at("method");
        if (!m.is_string()) throw ScenarioError("sim.method: expected a string");
        const auto parsed = parse_method(m.get<std::string>());
        if (!parsed) throw ScenarioError("sim.method: expected 'euler' or 'rk4'");
        sim.method = *parsed;
    }
}

/// 1-based line and column of a byte offset.
inline std::string location_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses, defaults and validates a scenario document.
inline Scenario parse_scenario(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character.
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw ScenarioError("parse error at " + detail::location_of(text, at) + ": " + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
    detail::reject_unknown_keys(doc, {"params", "initial", "schedule", "preset", "sim"}, "scenario");

    const bool has_schedule = doc.contains("schedule");
    const bool has_preset = doc.contains("preset");
    if (has_schedule == has_preset)
        throw ScenarioError("scenario: exactly one of 'schedule' or 'preset' is required");

    const VehicleParams params = doc.contains("params") ? detail::parse_params(doc.at("params"))
                                                        : VehicleParams{};
    try {
        params.validate();
    } catch (const InvalidParamsError& e) {
        throw ScenarioError(e.what());
    }

    Scenario s;
    if (has_preset) {
        const json& name = doc.at("preset");
        if (!name.is_string()) throw ScenarioError("preset: expected a string");
        try {
            s = make_preset(name.get<std::string>(), params);
        } catch (const InfeasibleWrenchError& e) {
            throw ScenarioError(std::string("preset: ") + e.what());
        }
    } else {
        s.params = params;
        s.schedule = detail::parse_schedule(doc.at("schedule"));
    }
    if (doc.contains("initial")) s.initial = detail::parse_initial(doc.at("initial"));
    if (doc.contains("sim")) detail::parse_sim(doc.at("sim"), s.sim);
    s.validate();
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading scenario file '" + path + "'");
    try {
        return parse_scenario(buf.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

/// Fully expanded form (explicit params, initial state and schedule).
/// Numbers are written with round-trip precision.
inline nlohmann::json to_json(const Scenario& s) {
    using nlohmann::json;
    json j;
    const VehicleParams& p = s.params;
    j["params"] = {{"m", p.mass},          {"ixx", p.inertia.ixx}, {"iyy", p.inertia.iyy},
                   {"izz", p.inertia.izz}, {"ka", p.thrust_coeff}, {"km", p.moment_coeff},
                   {"l", p.arm_length},    {"g", p.gravity}};
    const StateVector v = s.initial.vector();
    j["initial"] = json::array();
    for (int i = 0; i < 12; ++i) j["initial"].push_back(v[i]);
    j["schedule"] = json::array();
    for (const auto& e : s.schedule.entries())
        j["schedule"].push_back({{"t", e.t_start}, {"u", e.u.u}});
    j["sim"] = {{"dt", s.sim.dt},
                {"duration", s.sim.duration},
                {"method", std::string(to_string(s.sim.method))}};
    return j;
}

inline std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

}  // namespace quadsim
