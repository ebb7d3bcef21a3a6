#include "rismux/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rismux/results_csv.hpp"
#include "rismux/scenario_file.hpp"

#ifndef RISMUX_VERSION
#define RISMUX_VERSION "unknown"
#endif

namespace rismux {

namespace {

struct ExperimentArgs {
    std::string scenario;
    std::string preset;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
};

void add_experiment_options(CLI::App& cmd, ExperimentArgs& args) {
    cmd.add_option("scenario", args.scenario, "Scenario file (key = value lines)");
    cmd.add_option("--preset", args.preset, "Start from a figure preset (see `rismux presets`)");
    cmd.add_option("--set", args.overrides, "Override one key, e.g. --set rate.urllc=4")->take_all();
    cmd.add_option("--seed", args.seed, "Master seed");
    cmd.add_option("--trials", args.trials, "Monte-Carlo trials per grid point");
}

// defaults < preset < scenario file < --set < --seed/--trials
Experiment resolve(const ExperimentArgs& args) {
    Experiment e = args.preset.empty() ? Experiment{} : make_preset(args.preset);
    if (!args.scenario.empty()) apply_scenario_file(e, args.scenario);
    for (const auto& assignment : args.overrides) {
        auto [key, value] = split_assignment(assignment);
        apply_setting(e, key, value);
    }
    if (args.seed) e.config.seed = *args.seed;
    if (args.trials) e.config.trials = *args.trials;
    e.config.validate();
    if (e.sweep) {
        e.sweep->validate();
        for (double v : e.sweep->values) apply_sweep_value(e.config, e.sweep->param, v).validate();
    }
    return e;
}

nlohmann::json metadata(const Experiment& e, unsigned workers, double wall_time, const std::string& csv_name,
                        const std::vector<std::string>& warnings) {
    nlohmann::json scenario = nlohmann::json::object();
    for (const auto& [key, value] : scenario_entries(e)) scenario[key] = value;
    const UeRegion region = e.config.region();
    return {
        {"tool", "rismux"},
        {"version", RISMUX_VERSION},
        {"preset", e.preset},
        {"seed", e.config.seed},
        {"trials", e.config.trials},
        {"workers", workers},
        {"wall_time_s", wall_time},
        {"sampling_measure", std::string(to_string(e.config.sampling))},
        {"csv", csv_name},
        {"resolved",
         {{"far_field_m", e.config.far_field()},
          {"radial_min_m", region.radial_min},
          {"bs_distance_m", e.config.resolved_bs_distance()},
          {"xi", xi_fraction(e.config.link.frame)},
          {"urllc_latency_s", urllc_latency(e.config.link.frame)}}},
        {"scenario", scenario},
        {"warnings", warnings},
    };
}

int run_command(const ExperimentArgs& args, unsigned workers, const std::string& out_path, bool quiet,
                std::ostream& out, std::ostream& err) {
    const Experiment e = resolve(args);

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    std::ostringstream csv;
    if (e.sweep) {
        SweepProgress progress;
        if (!quiet) {
            progress = [&err, &e](std::size_t point, std::size_t total) {
                if (point < total) {
                    err << "[" << point + 1 << "/" << total << "] " << to_string(e.sweep->param) << " = "
                        << e.sweep->values[point] << "\n";
                }
            };
        }
        const auto rows = run_sweep(*e.sweep, e.config, workers, progress);
        write_results_csv(csv, rows);
        warnings = zero_outage_warnings(rows);
    } else {
        const ScenarioResult result = run_scenario(e.config, workers);
        write_results_csv(csv, result, e.config.seed);
        warnings = zero_outage_warnings(result);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& w : warnings) err << "warning: " << w << "\n";

    if (out_path.empty() || out_path == "-") {
        out << csv.str();
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << csv.str()) || !file.flush()) {
        err << "error: cannot write " << out_path << "\n";
        return 1;
    }
    const std::string meta_path = out_path + ".meta.json";
    std::ofstream meta(meta_path, std::ios::binary);
    if (!meta || !(meta << metadata(e, workers, wall, out_path, warnings).dump(2) << "\n") || !meta.flush()) {
        err << "error: cannot write " << meta_path << "\n";
        return 1;
    }
    if (!quiet) err << "wrote " << out_path << " and " << meta_path << " in " << wall << " s\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte-Carlo link simulator for RIS-assisted uplink eMBB/URLLC multiplexing", "rismux"};
    app.set_version_flag("--version", RISMUX_VERSION);
    app.require_subcommand(1);

    ExperimentArgs run_args;
    unsigned workers = 0;
    std::string out_path;
    bool quiet = false;
    CLI::App* run = app.add_subcommand("run", "Run a scenario or sweep and write the results CSV");
    add_experiment_options(*run, run_args);
    run->add_option("--workers", workers, "Worker threads (0 = all cores)");
    run->add_option("--out", out_path, "CSV path; a .meta.json sidecar is written next to it (default: stdout)");
    run->add_flag("--quiet", quiet, "No progress output");

    ExperimentArgs show_args;
    CLI::App* show = app.add_subcommand("show", "Print the resolved scenario document");
    add_experiment_options(*show, show_args);

    CLI::App* presets = app.add_subcommand("presets", "List figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*presets) {
            for (auto name : preset_names()) out << name << "  " << preset_description(name) << "\n";
            return 0;
        }
        if (*show) {
            out << format_scenario(resolve(show_args));
            return 0;
        }
        return run_command(run_args, workers, out_path, quiet, out, err);
    } catch (const ConfigError& e) {
        err << "error: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rismux
