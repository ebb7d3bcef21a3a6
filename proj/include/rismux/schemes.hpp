#pragma once

// Per-trial semantics of the multiplexing schemes: which RIS configuration
// serves the URLLC TTI, whether the eMBB UE interferes, and how a missed
// preamble (or failed scheduling request) degrades the outcome.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rismux/geometry.hpp"
#include "rismux/link_metrics.hpp"
#include "rismux/random.hpp"
#include "rismux/ris_config.hpp"

namespace rismux {

enum class SchemeKind {
    ProposedPR,            // phasor rotation
    ProposedIN,            // alternating-projection interference nulling
    RandomConfig,          // uniform random phases
    MissedPreamble,        // RIS never switches
    PreemptivePuncturing,  // eMBB interrupted, RIS keeps the eMBB configuration
    GenieUrllcMax,         // coherent beamformer on the URLLC channel
};

inline constexpr std::array<SchemeKind, 6> kAllSchemes = {
    SchemeKind::ProposedPR,     SchemeKind::ProposedIN,           SchemeKind::RandomConfig,
    SchemeKind::MissedPreamble, SchemeKind::PreemptivePuncturing, SchemeKind::GenieUrllcMax,
};

std::string_view to_string(SchemeKind scheme);
std::optional<SchemeKind> parse_scheme(std::string_view name);

struct DetectionModel {
    double miss_rate = 0.0;  // epsilon_m

    void validate() const;
};

/// Frozen per-scenario algorithm and accounting switches.
struct SchemeSettings {
    double nulling_tolerance = 1e-6;
    std::size_t nulling_max_iterations = 1000;
    /// False models a frame with no URLLC TTI: eMBB pre-log 1.
    bool urllc_occurred = true;
    /// eMBB pre-log after a missed preamble: full xi when true, 1 otherwise.
    bool erase_embb_on_miss = true;
    /// Puncturing erases the switching mini-slots too (same xi as the proposed
    /// scheme) when true; otherwise only preamble + TTI mini-slots.
    bool puncturing_erases_switching = true;
    /// Genie benchmark with the eMBB UE still transmitting during the URLLC TTI.
    /// Off by default: the genie is an interference-free upper bound.
    bool genie_embb_interference = false;

    void validate() const;
};

struct TrialDiagnostics {
    bool nulling_ran = false;
    bool nulling_converged = false;
    std::size_t nulling_iterations = 0;
    std::size_t nulling_zero_events = 0;
    bool partition_ran = false;
    std::size_t partition_split = 0;
    double embb_residual = 0.0;  // |g_e^H psi| of the URLLC-TTI configuration
    std::size_t undefined_phases = 0;
    bool failed = false;
    std::string error;

    bool operator==(const TrialDiagnostics&) const = default;
};

struct TrialOutcome {
    double mi_embb = 0.0;
    double mi_urllc = 0.0;
    double sinr_urllc = 0.0;
    bool outage_embb = true;
    bool outage_urllc = true;
    bool detection_hit = false;
    TrialDiagnostics diagnostics;

    /// Field-for-field equality excluding diagnostics.
    bool same_link_outcome(const TrialOutcome& other) const;
    bool operator==(const TrialOutcome&) const = default;
};

struct UrllcPolicy {
    RisConfiguration config;
    bool embb_active = true;
    /// Set when the algorithm already measured |g_e^H psi|; the SINR then uses
    /// its square verbatim.
    std::optional<double> embb_residual;
    TrialDiagnostics diagnostics;
};

/// URLLC-TTI policy on a detected preamble. `embb_config` is the coherent
/// eMBB configuration for these channels; `rng` feeds the random and
/// nulling-start draws.
UrllcPolicy urllc_policy(SchemeKind scheme, const ChannelRealization& channels, const RisConfiguration& embb_config,
                         const SchemeSettings& settings, RandomStream& rng);

/// Bernoulli(1 - epsilon_m) detection draw: hit iff u >= epsilon_m, u ~ U[0,1).
/// The draw is the same for every scheme; for puncturing it is the scheduling
/// request succeeding.
bool apply_detection(SchemeKind scheme, const DetectionModel& detection, RandomStream& rng);

/// Stream the given scheme uses for its own random draws in a trial.
RandomStream scheme_stream(SchemeKind scheme, std::uint64_t seed, std::uint64_t trial);

struct LinkParameters {
    LinkBudget budget;
    FrameConfig frame;
    RateTargets targets;
    DetectionModel detection;
    SchemeSettings settings;

    void validate() const;
};

/// State shared by every scheme in one trial: channels, the eMBB
/// configuration, its SNR and the detection draw.
class TrialContext {
public:
    TrialContext(const ChannelRealization& channels, const LinkParameters& params, std::uint64_t seed,
                 std::uint64_t trial);

    const ChannelRealization& channels() const noexcept { return *channels_; }
    const LinkParameters& params() const noexcept { return *params_; }
    const RisConfiguration& embb_config() const noexcept { return embb_config_; }
    double embb_snr() const noexcept { return embb_snr_; }
    bool detection_hit() const noexcept { return detection_hit_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t trial() const noexcept { return trial_; }

private:
    const ChannelRealization* channels_;
    const LinkParameters* params_;
    std::uint64_t seed_;
    std::uint64_t trial_;
    RisConfiguration embb_config_;
    double embb_snr_;
    bool detection_hit_;
};

/// Never throws for algorithm failures: they are recorded in diagnostics and
/// the trial counts as an outage for both UEs.
TrialOutcome evaluate_trial(SchemeKind scheme, const TrialContext& context);

TrialOutcome evaluate_trial(SchemeKind scheme, const ChannelRealization& channels, const LinkParameters& params,
                            std::uint64_t seed, std::uint64_t trial);

}  // namespace rismux
