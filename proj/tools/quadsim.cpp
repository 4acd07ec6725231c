// quadsim: batch runner for quadrotor scenarios.
//
//   quadsim run --scenario <path> --out <path> [--dt s] [--duration s] [--method euler|rk4]
//   quadsim preset --name <hover|free_fall|yaw_step|forward_flight> --out <path>
//   quadsim validate --scenario <path>
//
// Exit codes: 0 completed, 2 scenario error, 3 singularity stop, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "quadsim/quadsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitScenario = 2;
constexpr int kExitSingularity = 3;
constexpr int kExitIo = 4;

struct RunOptions {
    std::string scenario;
    std::string out;
    std::optional<double> dt;
    std::optional<double> duration;
    std::optional<std::string> method;
};

int cmd_run(const RunOptions& opt) {
    quadsim::Scenario s = quadsim::load_scenario(opt.scenario);
    if (opt.dt) s.sim.dt = *opt.dt;
    if (opt.duration) s.sim.duration = *opt.duration;
    if (opt.method) {
        const auto m = quadsim::parse_method(*opt.method);
        if (!m) throw quadsim::ScenarioError("--method: expected 'euler' or 'rk4'");
        s.sim.method = *m;
    }
    s.validate();

    const quadsim::RunSummary summary = quadsim::run(s, opt.out);
    std::cout << quadsim::to_json(summary).dump(2) << '\n';
    if (summary.termination == quadsim::Termination::singularity) {
        std::cerr << "quadsim: " << summary.message << '\n';
        return kExitSingularity;
    }
    return kExitOk;
}

int cmd_preset(const std::string& name, const std::string& out_path) {
    const quadsim::Scenario s = quadsim::make_preset(name);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw quadsim::IoError("cannot open output file '" + out_path + "'");
    out << quadsim::serialize_scenario(s);
    out.flush();
    if (!out) throw quadsim::IoError("failed writing output file '" + out_path + "'");
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const quadsim::Scenario s = quadsim::load_scenario(path);
    std::cout << "ok: " << s.schedule.entries().size() << " schedule entries, dt=" << s.sim.dt
              << ", duration=" << s.sim.duration << ", method=" << quadsim::to_string(s.sim.method)
              << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadrotor 6-DOF batch simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Simulate a scenario and write the trajectory CSV");
    run->add_option("--scenario", run_opt.scenario, "Scenario JSON file")->required();
    run->add_option("--out", run_opt.out, "Output CSV path")->required();
    run->add_option("--dt", run_opt.dt, "Override step size (s)");
    run->add_option("--duration", run_opt.duration, "Override duration (s)");
    run->add_option("--method", run_opt.method, "Override integrator")
        ->check(CLI::IsMember({"euler", "rk4"}));

    std::string preset_name, preset_out;
    auto* preset = app.add_subcommand("preset", "Write a built-in scenario as JSON");
    preset->add_option("--name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember({"hover", "free_fall", "yaw_step", "forward_flight"}));
    preset->add_option("--out", preset_out, "Output JSON path")->required();

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Parse and check a scenario file");
    validate->add_option("--scenario", validate_path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitScenario;
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*preset) return cmd_preset(preset_name, preset_out);
        if (*validate) return cmd_validate(validate_path);
    } catch (const quadsim::IoError& e) {
        std::cerr << "quadsim: I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const quadsim::Error& e) {
        std::cerr << "quadsim: invalid scenario: " << e.what() << '\n';
        return kExitScenario;
    }
    return kExitScenario;
}
