#include "rismux/link_metrics.hpp"

#include <cmath>

namespace rismux {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

void LinkBudget::validate() const {
    if (!(embb_power > 0.0) || !std::isfinite(embb_power)) throw ConfigError("power.embb_dbm", "must be positive and finite");
    if (!(urllc_power > 0.0) || !std::isfinite(urllc_power)) throw ConfigError("power.urllc_dbm", "must be positive and finite");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) throw ConfigError("power.noise_dbm", "must be positive and finite");
}

void FrameConfig::validate() const {
    if (minislots < 1) throw ConfigError("frame.minislots", "must be positive");
    if (urllc_minislots < 1 || urllc_minislots > minislots) {
        throw ConfigError("frame.urllc_minislots", "must lie in [1, frame.minislots]");
    }
    if (preamble_minislots < 1) throw ConfigError("frame.preamble_minislots", "must be positive");
    if (switching_minislots < 1) throw ConfigError("frame.switching_minislots", "must be positive");
    if (preamble_minislots + 2 * switching_minislots + urllc_minislots > minislots) {
        throw ConfigError("frame.minislots", "preamble + 2 * switching + URLLC TTI exceeds the frame");
    }
    if (!(minislot_duration > 0.0) || !std::isfinite(minislot_duration)) {
        throw ConfigError("frame.minislot_duration_s", "must be positive");
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw ConfigError("frame.bandwidth_hz", "must be positive");
    if (symbols_per_minislot < 1) throw ConfigError("frame.symbols_per_minislot", "must be positive");
    if (!(processing_delay >= 0.0) || !std::isfinite(processing_delay)) {
        throw ConfigError("frame.processing_delay_s", "must be nonnegative");
    }
}

void RateTargets::validate() const {
    if (!(embb > 0.0) || !std::isfinite(embb)) throw ConfigError("rate.embb", "must be positive");
    if (!(urllc > 0.0) || !std::isfinite(urllc)) throw ConfigError("rate.urllc", "must be positive");
}

double effective_gain(std::span<const Complex> g, const RisConfiguration& config) {
    return std::norm(effective_channel(g, config));
}

double embb_snr(std::span<const Complex> g_embb, const RisConfiguration& config, const LinkBudget& budget) {
    return budget.embb_power * effective_gain(g_embb, config) / budget.noise_power;
}

double urllc_sinr_from_gains(double urllc_gain, double embb_gain, const LinkBudget& budget, bool embb_active) {
    const double interference = embb_active ? budget.embb_power * embb_gain : 0.0;
    return budget.urllc_power * urllc_gain / (interference + budget.noise_power);
}

double urllc_sinr(std::span<const Complex> g_urllc, std::span<const Complex> g_embb, const RisConfiguration& config,
                  const LinkBudget& budget, bool embb_active) {
    const double embb_gain = embb_active ? effective_gain(g_embb, config) : 0.0;
    return urllc_sinr_from_gains(effective_gain(g_urllc, config), embb_gain, budget, embb_active);
}

double xi_fraction(const FrameConfig& frame) {
    const auto erased = frame.preamble_minislots + 2 * frame.switching_minislots + frame.urllc_minislots;
    return static_cast<double>(erased) / static_cast<double>(frame.minislots);
}

double embb_mutual_info_from_snr(double snr, const FrameConfig& frame, bool urllc_occurred) {
    const double prelog = urllc_occurred ? 1.0 - xi_fraction(frame) : 1.0;
    return prelog * std::log2(1.0 + snr);
}

double embb_mutual_info(std::span<const Complex> g_embb, const LinkBudget& budget, const FrameConfig& frame,
                        bool urllc_occurred) {
    double coherent = 0.0;
    for (Complex c : g_embb) coherent += std::abs(c);
    const double snr = budget.embb_power * coherent * coherent / budget.noise_power;
    return embb_mutual_info_from_snr(snr, frame, urllc_occurred);
}

double urllc_mutual_info(std::span<const Complex> g_urllc, std::span<const Complex> g_embb,
                         const RisConfiguration& config, const LinkBudget& budget, bool embb_active) {
    return std::log2(1.0 + urllc_sinr(g_urllc, g_embb, config, budget, embb_active));
}

double urllc_latency(const FrameConfig& frame) {
    const auto minislots = frame.preamble_minislots + frame.urllc_minislots + frame.switching_minislots;
    return static_cast<double>(minislots) * frame.minislot_duration + frame.processing_delay;
}

}  // namespace rismux
