#pragma once

#include <cstddef>
#include <span>

#include "rismux/ris_config.hpp"
#include "rismux/types.hpp"

namespace rismux {

/// p_W = 10^((p_dBm - 30) / 10)
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Linear powers in watts.
struct LinkBudget {
    double embb_power = 0.19952623149688797;   // 23 dBm
    double urllc_power = 0.19952623149688797;  // 23 dBm
    double noise_power = 1e-12;                // -90 dBm

    void validate() const;
};

struct FrameConfig {
    std::size_t minislots = 80;        // M
    std::size_t urllc_minislots = 2;   // M_u
    std::size_t preamble_minislots = 1;   // M_p
    std::size_t switching_minislots = 1;  // M_s
    double minislot_duration = 125e-6;  // T_m, seconds
    double bandwidth = 1e6;             // B, hertz
    std::size_t symbols_per_minislot = 2;  // L, informational only
    double processing_delay = 0.0;      // D_proc, seconds

    void validate() const;
};

/// Target spectral efficiencies per mini-slot, bits/s/Hz.
struct RateTargets {
    double embb = 8.0;
    double urllc = 4.0;

    void validate() const;
};

/// |g^H psi|^2
double effective_gain(std::span<const Complex> g, const RisConfiguration& config);

/// p_e |g_e^H psi|^2 / sigma^2
double embb_snr(std::span<const Complex> g_embb, const RisConfiguration& config, const LinkBudget& budget);

/// p_u |g_u^H psi|^2 / (p_e |g_e^H psi|^2 [embb_active] + sigma^2)
double urllc_sinr(std::span<const Complex> g_urllc, std::span<const Complex> g_embb, const RisConfiguration& config,
                  const LinkBudget& budget, bool embb_active);

/// Same ratio from precomputed gains; the interference gain enters unchanged.
double urllc_sinr_from_gains(double urllc_gain, double embb_gain, const LinkBudget& budget, bool embb_active);

/// (M_p + 2 M_s + M_u) / M
double xi_fraction(const FrameConfig& frame);

/// (1 - xi_eff) log2(1 + p_e (sum |g_e,n|)^2 / sigma^2), xi_eff = xi if a URLLC
/// TTI occurred in the frame, otherwise 0. Assumes the coherent eMBB configuration.
double embb_mutual_info(std::span<const Complex> g_embb, const LinkBudget& budget, const FrameConfig& frame,
                        bool urllc_occurred);

/// Pre-log applied to an SNR already evaluated.
double embb_mutual_info_from_snr(double snr, const FrameConfig& frame, bool urllc_occurred);

/// log2(1 + SINR). Block fading makes every URLLC mini-slot identical, so this
/// is also the TTI average.
double urllc_mutual_info(std::span<const Complex> g_urllc, std::span<const Complex> g_embb,
                         const RisConfiguration& config, const LinkBudget& budget, bool embb_active);

/// Strict: mi < target.
inline bool outage(double mutual_info, double target) { return mutual_info < target; }

/// M_p T_m + M_u T_m + D_proc + M_s T_m
double urllc_latency(const FrameConfig& frame);

}  // namespace rismux
