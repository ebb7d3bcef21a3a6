#pragma once

// Seeded Monte-Carlo batches over random UE placements and parameter sweeps.
//
// Every trial draws from substreams keyed by (master seed, trial index,
// purpose), and partial sums are reduced in a fixed chunk order, so results
// are bit-identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rismux/geometry.hpp"
#include "rismux/link_metrics.hpp"
#include "rismux/schemes.hpp"

namespace rismux {

struct ScenarioConfig {
    std::size_t num_elements = 100;
    double wavelength = 0.1;
    PathLossParams pathloss;

    /// UE region; an unset radial floor resolves to the far-field distance.
    std::optional<double> radial_min;
    double radial_max = 100.0;
    double azimuth_min = 1.5 * std::numbers::pi;
    double azimuth_max = 2.0 * std::numbers::pi;
    double z_min = -3.0;
    double z_max = 3.0;
    SamplingMeasure sampling = SamplingMeasure::Coordinate;
    /// Pins the eMBB UE at this radial distance (angles still sampled).
    std::optional<double> embb_radius;
    /// BS radius along the 45 degree line; unset resolves to the far-field distance.
    std::optional<double> bs_distance;

    LinkParameters link;
    std::vector<SchemeKind> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    std::size_t trials = 100000;
    std::uint64_t seed = 1;

    double far_field() const { return far_field_distance(num_elements, wavelength); }
    UeRegion region() const;
    double resolved_bs_distance() const { return bs_distance.value_or(far_field()); }

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

struct Estimate {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval at 95%. Throws std::invalid_argument for n = 0 or
/// successes > n.
Estimate estimate_proportion(std::size_t successes, std::size_t n);

/// Sample mean with a normal-approximation 95% interval.
Estimate estimate_mean(double sum, double sum_sq, std::size_t n);

struct SchemeDiagnostics {
    std::size_t nulling_runs = 0;
    std::size_t nulling_converged = 0;
    double nulling_iterations_sum = 0.0;
    std::size_t partition_runs = 0;
    double partition_residual_sum = 0.0;
    std::size_t failed_trials = 0;

    double nulling_converged_fraction() const;
    double nulling_mean_iterations() const;
    double partition_mean_residual() const;
};

struct SchemeEstimates {
    SchemeKind scheme = SchemeKind::MissedPreamble;
    Estimate urllc_outage;
    Estimate embb_outage;
    Estimate embb_se;
    SchemeDiagnostics diagnostics;
};

struct ScenarioResult {
    std::vector<SchemeEstimates> schemes;

    /// Throws std::out_of_range when the scheme was not simulated.
    const SchemeEstimates& at(SchemeKind scheme) const;
};

/// Channels for one trial; overridable for fault injection.
using ChannelSource = std::function<ChannelRealization(std::uint64_t trial)>;

/// Geometry-backed channel synthesis for a scenario. The BS link is fixed
/// across trials; both UEs are redrawn every trial.
class TrialChannels {
public:
    explicit TrialChannels(const ScenarioConfig& config);

    Position3D embb_position(std::uint64_t trial) const;
    Position3D urllc_position(std::uint64_t trial) const;
    ChannelRealization operator()(std::uint64_t trial) const;

    const RisGeometry& geometry() const noexcept { return geometry_; }
    const Position3D& bs() const noexcept { return bs_; }

private:
    RisGeometry geometry_;
    PathLossParams pathloss_;
    UeRegion region_;
    UeRegion embb_region_;
    Position3D bs_;
    ComplexVector h_bs_;
    std::uint64_t seed_;
};

/// Outcomes of every configured scheme on one trial, in `config.schemes` order.
std::vector<TrialOutcome> simulate_trial(const ScenarioConfig& config, const ChannelRealization& channels,
                                         std::uint64_t trial);

/// Validates, then runs `config.trials` paired trials on `workers` threads
/// (0 = hardware concurrency).
ScenarioResult run_scenario(const ScenarioConfig& config, unsigned workers = 1, const ChannelSource& source = {});

enum class SweepParam { UrllcRate, PowerRatio, MissRate, NumElements, EmbbPower };

/// r_urllc, power_ratio_db, epsilon_m, num_elements, p_embb_dbm
std::string_view to_string(SweepParam param);
std::optional<SweepParam> parse_sweep_param(std::string_view name);

struct SweepSpec {
    SweepParam param = SweepParam::UrllcRate;
    std::vector<double> values;

    void validate() const;
};

/// Copy of `base` with one swept value applied. Power ratio values are p_e/p_u
/// in dB with p_u held fixed; eMBB power values are in dBm.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value);

struct SweepRow {
    SweepParam param;
    double value;
    std::uint64_t seed;
    SchemeEstimates estimates;
};

using SweepProgress = std::function<void(std::size_t point, std::size_t total)>;

/// One run_scenario per grid point with the base seed at every point, so UE
/// placements are shared wherever dimensions agree.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ScenarioConfig& base, unsigned workers = 1,
                                const SweepProgress& progress = {});

}  // namespace rismux
