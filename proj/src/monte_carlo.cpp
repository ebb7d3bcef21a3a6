#include "rismux/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <stdexcept>
#include <thread>

namespace rismux {

namespace {

constexpr std::size_t kChunkSize = 256;

struct SchemeAccumulator {
    std::size_t urllc_outages = 0;
    std::size_t embb_outages = 0;
    double se_sum = 0.0;
    double se_sum_sq = 0.0;
    SchemeDiagnostics diagnostics;

    void add(const TrialOutcome& outcome) {
        urllc_outages += outcome.outage_urllc ? 1 : 0;
        embb_outages += outcome.outage_embb ? 1 : 0;
        se_sum += outcome.mi_embb;
        se_sum_sq += outcome.mi_embb * outcome.mi_embb;
        const TrialDiagnostics& d = outcome.diagnostics;
        if (d.nulling_ran) {
            ++diagnostics.nulling_runs;
            diagnostics.nulling_converged += d.nulling_converged ? 1 : 0;
            diagnostics.nulling_iterations_sum += static_cast<double>(d.nulling_iterations);
        }
        if (d.partition_ran) {
            ++diagnostics.partition_runs;
            diagnostics.partition_residual_sum += d.embb_residual;
        }
        diagnostics.failed_trials += d.failed ? 1 : 0;
    }

    void merge(const SchemeAccumulator& other) {
        urllc_outages += other.urllc_outages;
        embb_outages += other.embb_outages;
        se_sum += other.se_sum;
        se_sum_sq += other.se_sum_sq;
        diagnostics.nulling_runs += other.diagnostics.nulling_runs;
        diagnostics.nulling_converged += other.diagnostics.nulling_converged;
        diagnostics.nulling_iterations_sum += other.diagnostics.nulling_iterations_sum;
        diagnostics.partition_runs += other.diagnostics.partition_runs;
        diagnostics.partition_residual_sum += other.diagnostics.partition_residual_sum;
        diagnostics.failed_trials += other.diagnostics.failed_trials;
    }
};

TrialOutcome failed_outcome(const std::string& message) {
    TrialOutcome out;
    out.diagnostics.failed = true;
    out.diagnostics.error = message;
    return out;
}

std::size_t sweep_elements(double value) {
    if (!(value >= 1.0) || std::floor(value) != value) {
        throw ConfigError("sweep.values", "element count must be a positive integer");
    }
    return static_cast<std::size_t>(value);
}

}  // namespace

UeRegion ScenarioConfig::region() const {
    UeRegion r;
    r.radial_min = radial_min.value_or(far_field());
    r.radial_max = radial_max;
    r.azimuth_min = azimuth_min;
    r.azimuth_max = azimuth_max;
    r.z_min = z_min;
    r.z_max = z_max;
    r.measure = sampling;
    return r;
}

void ScenarioConfig::validate() const {
    if (trials < 1) throw ConfigError("trials", "must be at least 1");
    try {
        RisGeometry geometry(num_elements, wavelength);
    } catch (const GeometryError& e) {
        throw ConfigError(wavelength > 0.0 ? "ris.elements" : "ris.wavelength_m", e.what());
    }
    pathloss.validate();
    const UeRegion r = region();
    try {
        r.validate(far_field());
    } catch (const RegionError& e) {
        throw ConfigError("region", e.what());
    }
    if (embb_radius) {
        UeRegion pinned = r;
        pinned.radial_min = pinned.radial_max = *embb_radius;
        try {
            pinned.validate(far_field());
        } catch (const RegionError& e) {
            throw ConfigError("region.embb_radius_m", e.what());
        }
    }
    const double bs = resolved_bs_distance();
    if (!(bs > 0.0) || !std::isfinite(bs)) throw ConfigError("bs.distance_m", "must be positive");
    link.validate();
    if (schemes.empty()) throw ConfigError("schemes", "at least one scheme is required");
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        if (std::find(schemes.begin(), schemes.begin() + static_cast<std::ptrdiff_t>(i), schemes[i]) !=
            schemes.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw ConfigError("schemes", "duplicate scheme " + std::string(to_string(schemes[i])));
        }
    }
}

Estimate estimate_proportion(std::size_t successes, std::size_t n) {
    if (n == 0) throw std::invalid_argument("estimate_proportion: no samples");
    if (successes > n) throw std::invalid_argument("estimate_proportion: successes exceed samples");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    Estimate e;
    e.value = p;
    e.n = n;
    e.ci_low = std::clamp(center - half, 0.0, p);
    e.ci_high = std::clamp(center + half, p, 1.0);
    return e;
}

Estimate estimate_mean(double sum, double sum_sq, std::size_t n) {
    if (n == 0) throw std::invalid_argument("estimate_mean: no samples");
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    double half = 0.0;
    if (n > 1) {
        const double variance = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
        half = kZ95 * std::sqrt(variance / nn);
    }
    return Estimate{mean, mean - half, mean + half, n};
}

double SchemeDiagnostics::nulling_converged_fraction() const {
    return nulling_runs ? static_cast<double>(nulling_converged) / static_cast<double>(nulling_runs) : 0.0;
}

double SchemeDiagnostics::nulling_mean_iterations() const {
    return nulling_runs ? nulling_iterations_sum / static_cast<double>(nulling_runs) : 0.0;
}

double SchemeDiagnostics::partition_mean_residual() const {
    return partition_runs ? partition_residual_sum / static_cast<double>(partition_runs) : 0.0;
}

const SchemeEstimates& ScenarioResult::at(SchemeKind scheme) const {
    for (const auto& s : schemes) {
        if (s.scheme == scheme) return s;
    }
    throw std::out_of_range("scheme " + std::string(to_string(scheme)) + " not in result");
}

TrialChannels::TrialChannels(const ScenarioConfig& config)
    : geometry_(config.num_elements, config.wavelength),
      pathloss_(config.pathloss),
      region_(config.region()),
      embb_region_(config.region()),
      bs_(bs_position(config.resolved_bs_distance())),
      seed_(config.seed) {
    if (config.embb_radius) embb_region_.radial_min = embb_region_.radial_max = *config.embb_radius;
    h_bs_ = los_channel(bs_, geometry_, pathloss_);
}

Position3D TrialChannels::embb_position(std::uint64_t trial) const {
    RandomStream rng(seed_, trial, StreamTag::embb_position);
    return sample_ue_position(embb_region_, rng);
}

Position3D TrialChannels::urllc_position(std::uint64_t trial) const {
    RandomStream rng(seed_, trial, StreamTag::urllc_position);
    return sample_ue_position(region_, rng);
}

ChannelRealization TrialChannels::operator()(std::uint64_t trial) const {
    return ChannelRealization::from_links(h_bs_, los_channel(embb_position(trial), geometry_, pathloss_),
                                          los_channel(urllc_position(trial), geometry_, pathloss_));
}

std::vector<TrialOutcome> simulate_trial(const ScenarioConfig& config, const ChannelRealization& channels,
                                         std::uint64_t trial) {
    const TrialContext context(channels, config.link, config.seed, trial);
    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(config.schemes.size());
    for (SchemeKind scheme : config.schemes) outcomes.push_back(evaluate_trial(scheme, context));
    return outcomes;
}

ScenarioResult run_scenario(const ScenarioConfig& config, unsigned workers, const ChannelSource& source) {
    config.validate();

    ChannelSource channels = source;
    if (!channels) {
        auto synth = std::make_shared<TrialChannels>(config);
        channels = [synth](std::uint64_t trial) { return (*synth)(trial); };
    }

    const std::size_t n_schemes = config.schemes.size();
    const std::size_t n_chunks = (config.trials + kChunkSize - 1) / kChunkSize;
    std::vector<std::vector<SchemeAccumulator>> partials(n_chunks, std::vector<SchemeAccumulator>(n_schemes));

    std::atomic<std::size_t> next_chunk{0};
    auto work = [&]() {
        for (std::size_t chunk = next_chunk++; chunk < n_chunks; chunk = next_chunk++) {
            auto& acc = partials[chunk];
            const std::size_t first = chunk * kChunkSize;
            const std::size_t last = std::min(config.trials, first + kChunkSize);
            for (std::size_t trial = first; trial < last; ++trial) {
                std::vector<TrialOutcome> outcomes;
                try {
                    const ChannelRealization realization = channels(trial);
                    outcomes = simulate_trial(config, realization, trial);
                } catch (const std::exception& e) {
                    outcomes.assign(n_schemes, failed_outcome(e.what()));
                }
                for (std::size_t s = 0; s < n_schemes; ++s) acc[s].add(outcomes[s]);
            }
        }
    };

    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    std::vector<SchemeAccumulator> total(n_schemes);
    for (const auto& chunk : partials) {
        for (std::size_t s = 0; s < n_schemes; ++s) total[s].merge(chunk[s]);
    }

    ScenarioResult result;
    for (std::size_t s = 0; s < n_schemes; ++s) {
        SchemeEstimates est;
        est.scheme = config.schemes[s];
        est.urllc_outage = estimate_proportion(total[s].urllc_outages, config.trials);
        est.embb_outage = estimate_proportion(total[s].embb_outages, config.trials);
        est.embb_se = estimate_mean(total[s].se_sum, total[s].se_sum_sq, config.trials);
        est.diagnostics = total[s].diagnostics;
        result.schemes.push_back(est);
    }
    return result;
}

std::string_view to_string(SweepParam param) {
    switch (param) {
        case SweepParam::UrllcRate: return "r_urllc";
        case SweepParam::PowerRatio: return "power_ratio_db";
        case SweepParam::MissRate: return "epsilon_m";
        case SweepParam::NumElements: return "num_elements";
        case SweepParam::EmbbPower: return "p_embb_dbm";
    }
    return "unknown";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
    for (SweepParam p : {SweepParam::UrllcRate, SweepParam::PowerRatio, SweepParam::MissRate,
                         SweepParam::NumElements, SweepParam::EmbbPower}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

void SweepSpec::validate() const {
    if (values.empty()) throw ConfigError("sweep.values", "grid is empty");
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("sweep.values", "grid values must be finite");
        switch (param) {
            case SweepParam::UrllcRate:
                if (!(v > 0.0)) throw ConfigError("sweep.values", "URLLC rate must be positive");
                break;
            case SweepParam::MissRate:
                if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("sweep.values", "miss rate must lie in [0, 1]");
                break;
            case SweepParam::NumElements:
                sweep_elements(v);
                break;
            case SweepParam::PowerRatio:
            case SweepParam::EmbbPower:
                break;
        }
    }
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value) {
    ScenarioConfig config = base;
    switch (param) {
        case SweepParam::UrllcRate:
            config.link.targets.urllc = value;
            break;
        case SweepParam::PowerRatio:
            config.link.budget.embb_power = config.link.budget.urllc_power * std::pow(10.0, value / 10.0);
            break;
        case SweepParam::MissRate:
            config.link.detection.miss_rate = value;
            break;
        case SweepParam::NumElements:
            config.num_elements = sweep_elements(value);
            break;
        case SweepParam::EmbbPower:
            config.link.budget.embb_power = dbm_to_watts(value);
            break;
    }
    return config;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ScenarioConfig& base, unsigned workers,
                                const SweepProgress& progress) {
    spec.validate();
    std::vector<ScenarioConfig> points;
    points.reserve(spec.values.size());
    for (double v : spec.values) {
        points.push_back(apply_sweep_value(base, spec.param, v));
        points.back().validate();
    }

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (progress) progress(i, points.size());
        const ScenarioResult result = run_scenario(points[i], workers);
        for (const auto& est : result.schemes) rows.push_back({spec.param, spec.values[i], base.seed, est});
    }
    if (progress) progress(points.size(), points.size());
    return rows;
}

}  // namespace rismux
