#include "rismux/scenario_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace rismux {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(std::string(key), "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = text.find(',');
        items.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return items;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_bool(bool value) { return value ? "true" : "false"; }

// Shortest dBm text that converts back to exactly `watts`.
std::string format_dbm(double watts) {
    const double dbm = watts_to_dbm(watts);
    double candidate = dbm;
    for (int step = 0; step < 8; ++step) {
        if (dbm_to_watts(candidate) == watts) return format_double(candidate);
        candidate = std::nextafter(candidate, dbm_to_watts(candidate) < watts ? INFINITY : -INFINITY);
    }
    return format_double(dbm);
}

std::string format_optional(const std::optional<double>& value, std::string_view unset) {
    return value ? format_double(*value) : std::string(unset);
}

std::optional<double> parse_optional(std::string_view key, std::string_view text, std::string_view unset) {
    if (trim(text) == unset) return std::nullopt;
    return parse_double(key, text);
}

struct Field {
    std::string_view key;
    std::function<void(Experiment&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const Experiment&)> get;
};

template <typename Member>
Field double_field(std::string_view key, Member member) {
    return {key,
            [member](Experiment& e, std::string_view k, std::string_view v) { member(e) = parse_double(k, v); },
            [member](const Experiment& e) { return format_double(member(e)); }};
}

template <typename Member>
Field count_field(std::string_view key, Member member) {
    return {key,
            [member](Experiment& e, std::string_view k, std::string_view v) {
                member(e) = static_cast<std::size_t>(parse_unsigned(k, v));
            },
            [member](const Experiment& e) { return std::to_string(member(e)); }};
}

template <typename Member>
Field bool_field(std::string_view key, Member member) {
    return {key, [member](Experiment& e, std::string_view k, std::string_view v) { member(e) = parse_bool(k, v); },
            [member](const Experiment& e) { return format_bool(member(e)); }};
}

template <typename Member>
Field dbm_field(std::string_view key, Member member) {
    return {key,
            [member](Experiment& e, std::string_view k, std::string_view v) {
                member(e) = dbm_to_watts(parse_double(k, v));
            },
            [member](const Experiment& e) { return format_dbm(member(e)); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        count_field("ris.elements", [](auto& e) -> auto& { return e.config.num_elements; }),
        double_field("ris.wavelength_m", [](auto& e) -> auto& { return e.config.wavelength; }),
        double_field("pathloss.reference_gain",
                     [](auto& e) -> auto& { return e.config.pathloss.reference_gain; }),
        double_field("pathloss.reference_distance_m",
                     [](auto& e) -> auto& { return e.config.pathloss.reference_distance; }),
        double_field("pathloss.exponent", [](auto& e) -> auto& { return e.config.pathloss.exponent; }),
        {"region.radial_min_m",
         [](Experiment& e, std::string_view k, std::string_view v) {
             e.config.radial_min = parse_optional(k, v, "far_field");
         },
         [](const Experiment& e) { return format_optional(e.config.radial_min, "far_field"); }},
        double_field("region.radial_max_m", [](auto& e) -> auto& { return e.config.radial_max; }),
        double_field("region.azimuth_min_rad", [](auto& e) -> auto& { return e.config.azimuth_min; }),
        double_field("region.azimuth_max_rad", [](auto& e) -> auto& { return e.config.azimuth_max; }),
        double_field("region.z_min_m", [](auto& e) -> auto& { return e.config.z_min; }),
        double_field("region.z_max_m", [](auto& e) -> auto& { return e.config.z_max; }),
        {"region.sampling",
         [](Experiment& e, std::string_view k, std::string_view v) {
             auto measure = parse_sampling_measure(trim(v));
             if (!measure) throw ConfigError(std::string(k), "expected coordinate or volume");
             e.config.sampling = *measure;
         },
         [](const Experiment& e) { return std::string(to_string(e.config.sampling)); }},
        {"region.embb_radius_m",
         [](Experiment& e, std::string_view k, std::string_view v) {
             e.config.embb_radius = parse_optional(k, v, "sampled");
         },
         [](const Experiment& e) { return format_optional(e.config.embb_radius, "sampled"); }},
        {"bs.distance_m",
         [](Experiment& e, std::string_view k, std::string_view v) {
             e.config.bs_distance = parse_optional(k, v, "far_field");
         },
         [](const Experiment& e) { return format_optional(e.config.bs_distance, "far_field"); }},
        dbm_field("power.embb_dbm", [](auto& e) -> auto& { return e.config.link.budget.embb_power; }),
        dbm_field("power.urllc_dbm", [](auto& e) -> auto& { return e.config.link.budget.urllc_power; }),
        dbm_field("power.noise_dbm", [](auto& e) -> auto& { return e.config.link.budget.noise_power; }),
        count_field("frame.minislots", [](auto& e) -> auto& { return e.config.link.frame.minislots; }),
        count_field("frame.urllc_minislots",
                    [](auto& e) -> auto& { return e.config.link.frame.urllc_minislots; }),
        count_field("frame.preamble_minislots",
                    [](auto& e) -> auto& { return e.config.link.frame.preamble_minislots; }),
        count_field("frame.switching_minislots",
                    [](auto& e) -> auto& { return e.config.link.frame.switching_minislots; }),
        double_field("frame.minislot_duration_s",
                     [](auto& e) -> auto& { return e.config.link.frame.minislot_duration; }),
        double_field("frame.bandwidth_hz", [](auto& e) -> auto& { return e.config.link.frame.bandwidth; }),
        count_field("frame.symbols_per_minislot",
                    [](auto& e) -> auto& { return e.config.link.frame.symbols_per_minislot; }),
        double_field("frame.processing_delay_s",
                     [](auto& e) -> auto& { return e.config.link.frame.processing_delay; }),
        double_field("rate.embb", [](auto& e) -> auto& { return e.config.link.targets.embb; }),
        double_field("rate.urllc", [](auto& e) -> auto& { return e.config.link.targets.urllc; }),
        double_field("detection.miss_rate",
                     [](auto& e) -> auto& { return e.config.link.detection.miss_rate; }),
        double_field("nulling.tolerance",
                     [](auto& e) -> auto& { return e.config.link.settings.nulling_tolerance; }),
        count_field("nulling.max_iterations",
                    [](auto& e) -> auto& { return e.config.link.settings.nulling_max_iterations; }),
        bool_field("frame.urllc_occurred",
                   [](auto& e) -> auto& { return e.config.link.settings.urllc_occurred; }),
        bool_field("miss.erase_embb", [](auto& e) -> auto& { return e.config.link.settings.erase_embb_on_miss; }),
        bool_field("puncturing.erase_switching",
                   [](auto& e) -> auto& { return e.config.link.settings.puncturing_erases_switching; }),
        bool_field("genie.embb_interference",
                   [](auto& e) -> auto& { return e.config.link.settings.genie_embb_interference; }),
        {"schemes",
         [](Experiment& e, std::string_view k, std::string_view v) {
             if (trim(v) == "all") {
                 e.config.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
                 return;
             }
             std::vector<SchemeKind> schemes;
             for (auto name : split_list(v)) {
                 auto scheme = parse_scheme(name);
                 if (!scheme) throw ConfigError(std::string(k), "unknown scheme '" + std::string(name) + "'");
                 schemes.push_back(*scheme);
             }
             e.config.schemes = std::move(schemes);
         },
         [](const Experiment& e) {
             std::string out;
             for (SchemeKind s : e.config.schemes) {
                 if (!out.empty()) out += ", ";
                 out += to_string(s);
             }
             return out;
         }},
        count_field("trials", [](auto& e) -> auto& { return e.config.trials; }),
        {"seed",
         [](Experiment& e, std::string_view k, std::string_view v) { e.config.seed = parse_unsigned(k, v); },
         [](const Experiment& e) { return std::to_string(e.config.seed); }},
        {"sweep.param",
         [](Experiment& e, std::string_view k, std::string_view v) {
             if (trim(v) == "none") {
                 e.sweep.reset();
                 return;
             }
             auto param = parse_sweep_param(trim(v));
             if (!param) throw ConfigError(std::string(k), "unknown sweep parameter '" + std::string(trim(v)) + "'");
             if (!e.sweep) e.sweep.emplace();
             e.sweep->param = *param;
         },
         [](const Experiment& e) { return e.sweep ? std::string(to_string(e.sweep->param)) : std::string("none"); }},
        {"sweep.values",
         [](Experiment& e, std::string_view k, std::string_view v) {
             if (!e.sweep) e.sweep.emplace();
             e.sweep->values.clear();
             if (trim(v).empty()) return;
             for (auto item : split_list(v)) e.sweep->values.push_back(parse_double(k, item));
         },
         [](const Experiment& e) {
             std::string out;
             if (!e.sweep) return out;
             for (double v : e.sweep->values) {
                 if (!out.empty()) out += ", ";
                 out += format_double(v);
             }
             return out;
         }},
    };
    return table;
}

}  // namespace

void apply_setting(Experiment& experiment, std::string_view key, std::string_view value) {
    key = trim(key);
    for (const auto& field : fields()) {
        if (field.key == key) {
            field.set(experiment, key, value);
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown key");
}

std::pair<std::string, std::string> split_assignment(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(trim(assignment)), "expected key=value");
    }
    return {std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1)))};
}

void apply_scenario(Experiment& experiment, std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        try {
            auto [key, value] = split_assignment(text);
            apply_setting(experiment, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.key(), "line " + std::to_string(line_no) + ": " +
                                           std::string(e.what()).substr(e.key().empty() ? 0 : e.key().size() + 2));
        }
    }
}

void apply_scenario_file(Experiment& experiment, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    apply_scenario(experiment, in);
}

std::vector<std::pair<std::string, std::string>> scenario_entries(const Experiment& experiment) {
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& field : fields()) {
        if (field.key == "sweep.values" && !experiment.sweep) continue;
        entries.emplace_back(std::string(field.key), field.get(experiment));
    }
    return entries;
}

std::string format_scenario(const Experiment& experiment) {
    std::ostringstream out;
    if (!experiment.preset.empty()) out << "# preset " << experiment.preset << "\n";
    for (const auto& [key, value] : scenario_entries(experiment)) out << key << " = " << value << "\n";
    return out.str();
}

namespace {

struct Preset {
    std::string_view name;
    std::string_view description;
    std::string_view body;
};

// Grids span the ranges of the published panels; the exact axis ticks are
// not recoverable, so these are approximations.
constexpr std::array<Preset, 5> kPresets = {{
    {"fig-a", "URLLC outage vs URLLC spectral efficiency",
     "sweep.param = r_urllc\n"
     "sweep.values = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10\n"},
    {"fig-b", "URLLC outage vs eMBB/URLLC power ratio at p_u = 23 dBm",
     "sweep.param = power_ratio_db\n"
     "sweep.values = -20, -15, -10, -5, 0, 5, 10, 15, 20\n"},
    {"fig-c", "URLLC outage vs preamble miss-detection rate",
     "sweep.param = epsilon_m\n"
     "sweep.values = 0, 0.001, 0.01, 0.1, 1\n"},
    {"fig-d", "URLLC outage vs RIS size with the region floor pinned at 18 m",
     "region.radial_min_m = 18\n"
     "bs.distance_m = 18\n"
     "sweep.param = num_elements\n"
     "sweep.values = 36, 64, 100, 196\n"},
    {"fig-e", "eMBB spectral efficiency vs eMBB power at the cell edge",
     "region.embb_radius_m = 100\n"
     "sweep.param = p_embb_dbm\n"
     "sweep.values = 0, 5, 10, 15, 20, 23, 25, 30\n"},
}};

const Preset* find_preset(std::string_view name) {
    for (const auto& p : kPresets) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

}  // namespace

std::vector<std::string_view> preset_names() {
    std::vector<std::string_view> names;
    for (const auto& p : kPresets) names.push_back(p.name);
    return names;
}

std::string_view preset_description(std::string_view name) {
    const Preset* p = find_preset(name);
    return p ? p->description : std::string_view{};
}

Experiment make_preset(std::string_view name) {
    const Preset* p = find_preset(name);
    if (!p) throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
    Experiment experiment;
    experiment.preset = std::string(name);
    std::istringstream in{std::string(p->body)};
    apply_scenario(experiment, in);
    return experiment;
}

}  // namespace rismux
