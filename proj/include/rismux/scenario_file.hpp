#pragma once

// Flat key = value scenario documents and the figure presets.
//
//   # comment
//   ris.elements = 100
//   power.embb_dbm = 23
//   sweep.param = r_urllc
//   sweep.values = 1, 2, 4, 8
//
// Powers are given in dBm and converted to watts once, here. Unknown keys are
// rejected.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rismux/monte_carlo.hpp"

namespace rismux {

struct Experiment {
    ScenarioConfig config;
    std::optional<SweepSpec> sweep;
    std::string preset;  // empty unless built from a preset
};

/// Sets one field. Throws ConfigError carrying `key` on an unknown key or a
/// malformed value. Range checks are left to ScenarioConfig::validate.
void apply_setting(Experiment& experiment, std::string_view key, std::string_view value);

/// Parses "key=value" as given on the command line.
std::pair<std::string, std::string> split_assignment(std::string_view assignment);

/// Applies every line of a scenario document on top of `experiment`.
void apply_scenario(Experiment& experiment, std::istream& in);
void apply_scenario_file(Experiment& experiment, const std::filesystem::path& path);

/// Resolved document that reproduces `experiment` when applied to defaults.
std::vector<std::pair<std::string, std::string>> scenario_entries(const Experiment& experiment);
std::string format_scenario(const Experiment& experiment);

std::vector<std::string_view> preset_names();
std::string_view preset_description(std::string_view name);

/// Throws ConfigError("preset", ...) for an unknown name.
Experiment make_preset(std::string_view name);

}  // namespace rismux
