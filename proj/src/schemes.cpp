#include "rismux/schemes.hpp"

#include <cmath>
#include <exception>

namespace rismux {

namespace {

struct SchemeName {
    SchemeKind kind;
    std::string_view name;
};

constexpr std::array<SchemeName, 6> kSchemeNames = {{
    {SchemeKind::ProposedPR, "proposed_pr"},
    {SchemeKind::ProposedIN, "proposed_in"},
    {SchemeKind::RandomConfig, "random"},
    {SchemeKind::MissedPreamble, "missed_preamble"},
    {SchemeKind::PreemptivePuncturing, "puncturing"},
    {SchemeKind::GenieUrllcMax, "genie"},
}};

double embb_prelog(const FrameConfig& frame, const SchemeSettings& settings, SchemeKind scheme, bool hit) {
    if (!settings.urllc_occurred) return 1.0;
    if (!hit && !settings.erase_embb_on_miss) return 1.0;
    if (hit && scheme == SchemeKind::PreemptivePuncturing && !settings.puncturing_erases_switching) {
        const auto erased = frame.preamble_minislots + frame.urllc_minislots;
        return 1.0 - static_cast<double>(erased) / static_cast<double>(frame.minislots);
    }
    return 1.0 - xi_fraction(frame);
}

}  // namespace

std::string_view to_string(SchemeKind scheme) {
    for (const auto& entry : kSchemeNames) {
        if (entry.kind == scheme) return entry.name;
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
    for (const auto& entry : kSchemeNames) {
        if (entry.name == name) return entry.kind;
    }
    return std::nullopt;
}

void DetectionModel::validate() const {
    if (!(miss_rate >= 0.0 && miss_rate <= 1.0)) throw ConfigError("detection.miss_rate", "must lie in [0, 1]");
}

void SchemeSettings::validate() const {
    if (!(nulling_tolerance > 0.0) || !std::isfinite(nulling_tolerance)) {
        throw ConfigError("nulling.tolerance", "must be positive");
    }
    if (nulling_max_iterations < 1) throw ConfigError("nulling.max_iterations", "must be at least 1");
}

void LinkParameters::validate() const {
    budget.validate();
    frame.validate();
    targets.validate();
    detection.validate();
    settings.validate();
}

bool TrialOutcome::same_link_outcome(const TrialOutcome& other) const {
    return mi_embb == other.mi_embb && mi_urllc == other.mi_urllc && sinr_urllc == other.sinr_urllc &&
           outage_embb == other.outage_embb && outage_urllc == other.outage_urllc &&
           detection_hit == other.detection_hit;
}

UrllcPolicy urllc_policy(SchemeKind scheme, const ChannelRealization& channels, const RisConfiguration& embb_config,
                         const SchemeSettings& settings, RandomStream& rng) {
    UrllcPolicy policy;
    switch (scheme) {
        case SchemeKind::ProposedPR: {
            PhasorRotation pr = phasor_rotation(channels.g_embb);
            policy.config = std::move(pr.config);
            policy.embb_residual = pr.partition.residual;
            policy.diagnostics.partition_ran = true;
            policy.diagnostics.partition_split = pr.partition.split_size;
            policy.diagnostics.undefined_phases = count_zero_entries(channels.g_embb);
            break;
        }
        case SchemeKind::ProposedIN: {
            ProjectionSettings ps;
            ps.tolerance = settings.nulling_tolerance;
            ps.max_iterations = settings.nulling_max_iterations;
            ps.initial = random_configuration(channels.size(), rng);
            ProjectionOutcome in = interference_nulling(channels.g_embb, ps);
            policy.config = std::move(in.config);
            policy.embb_residual = in.residual;
            policy.diagnostics.nulling_ran = true;
            policy.diagnostics.nulling_converged = in.converged;
            policy.diagnostics.nulling_iterations = in.iterations;
            policy.diagnostics.nulling_zero_events = in.zero_projection_events;
            break;
        }
        case SchemeKind::RandomConfig:
            policy.config = random_configuration(channels.size(), rng);
            break;
        case SchemeKind::MissedPreamble:
            policy.config = embb_config;
            break;
        case SchemeKind::PreemptivePuncturing:
            policy.config = embb_config;
            policy.embb_active = false;
            break;
        case SchemeKind::GenieUrllcMax:
            policy.config = coherent_beamformer(channels.g_urllc);
            policy.embb_active = settings.genie_embb_interference;
            policy.diagnostics.undefined_phases = count_zero_entries(channels.g_urllc);
            break;
    }
    return policy;
}

bool apply_detection(SchemeKind /*scheme*/, const DetectionModel& detection, RandomStream& rng) {
    return rng.uniform() >= detection.miss_rate;
}

RandomStream scheme_stream(SchemeKind scheme, std::uint64_t seed, std::uint64_t trial) {
    switch (scheme) {
        case SchemeKind::RandomConfig:
            return RandomStream(seed, trial, StreamTag::random_configuration);
        case SchemeKind::ProposedIN:
            return RandomStream(seed, trial, StreamTag::nulling_start);
        default:
            return RandomStream(seed, trial, StreamTag::generic);
    }
}

TrialContext::TrialContext(const ChannelRealization& channels, const LinkParameters& params, std::uint64_t seed,
                           std::uint64_t trial)
    : channels_(&channels),
      params_(&params),
      seed_(seed),
      trial_(trial),
      embb_config_(coherent_beamformer(channels.g_embb)),
      embb_snr_(0.0),
      detection_hit_(false) {
    double coherent = 0.0;
    for (Complex c : channels.g_embb) coherent += std::abs(c);
    embb_snr_ = params.budget.embb_power * coherent * coherent / params.budget.noise_power;
    RandomStream detection_rng(seed, trial, StreamTag::detection);
    detection_hit_ = apply_detection(SchemeKind::MissedPreamble, params.detection, detection_rng);
}

TrialOutcome evaluate_trial(SchemeKind scheme, const TrialContext& context) {
    const LinkParameters& params = context.params();
    const ChannelRealization& channels = context.channels();
    TrialOutcome out;
    out.detection_hit = context.detection_hit();
    try {
        UrllcPolicy policy;
        if (context.detection_hit() && scheme != SchemeKind::MissedPreamble) {
            RandomStream rng = scheme_stream(scheme, context.seed(), context.trial());
            policy = urllc_policy(scheme, channels, context.embb_config(), params.settings, rng);
        } else {
            // missed preamble or failed scheduling request: RIS stays put, eMBB keeps transmitting
            policy.config = context.embb_config();
        }

        const double urllc_gain = effective_gain(channels.g_urllc, policy.config);
        double embb_gain = 0.0;
        if (policy.embb_active) {
            embb_gain = policy.embb_residual ? *policy.embb_residual * *policy.embb_residual
                                             : effective_gain(channels.g_embb, policy.config);
        }
        if (policy.embb_residual) policy.diagnostics.embb_residual = *policy.embb_residual;

        out.sinr_urllc = urllc_sinr_from_gains(urllc_gain, embb_gain, params.budget, policy.embb_active);
        out.mi_urllc = std::log2(1.0 + out.sinr_urllc);
        const bool switched = context.detection_hit() && scheme != SchemeKind::MissedPreamble;
        out.mi_embb = embb_prelog(params.frame, params.settings, scheme, switched) *
                      std::log2(1.0 + context.embb_snr());
        out.outage_urllc = outage(out.mi_urllc, params.targets.urllc);
        out.outage_embb = outage(out.mi_embb, params.targets.embb);
        out.diagnostics = std::move(policy.diagnostics);
    } catch (const std::exception& e) {
        out.mi_embb = 0.0;
        out.mi_urllc = 0.0;
        out.sinr_urllc = 0.0;
        out.outage_embb = true;
        out.outage_urllc = true;
        out.diagnostics = TrialDiagnostics{};
        out.diagnostics.failed = true;
        out.diagnostics.error = e.what();
    }
    return out;
}

TrialOutcome evaluate_trial(SchemeKind scheme, const ChannelRealization& channels, const LinkParameters& params,
                            std::uint64_t seed, std::uint64_t trial) {
    const TrialContext context(channels, params, seed, trial);
    return evaluate_trial(scheme, context);
}

}  // namespace rismux
