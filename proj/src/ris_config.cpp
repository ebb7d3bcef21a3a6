#include "rismux/ris_config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rismux {

RisConfiguration::RisConfiguration(std::vector<double> phases) : phases_(std::move(phases)) {
    for (double& theta : phases_) {
        if (!std::isfinite(theta)) throw std::invalid_argument("RIS phase must be finite");
        theta = wrap_phase(theta);
    }
}

RisConfiguration RisConfiguration::from_coefficients(std::span<const Complex> coefficients) {
    std::vector<double> phases(coefficients.size());
    std::transform(coefficients.begin(), coefficients.end(), phases.begin(),
                   [](Complex c) { return c == Complex{} ? 0.0 : -std::arg(c); });
    return RisConfiguration(std::move(phases));
}

ComplexVector RisConfiguration::coefficients() const {
    ComplexVector psi(phases_.size());
    std::transform(phases_.begin(), phases_.end(), psi.begin(),
                   [](double theta) { return std::polar(1.0, -theta); });
    return psi;
}

Complex effective_channel(std::span<const Complex> g, const RisConfiguration& config) {
    if (g.size() != config.size()) {
        throw DimensionError("effective_channel: channel has " + std::to_string(g.size()) +
                             " entries, configuration " + std::to_string(config.size()));
    }
    Complex acc{};
    for (std::size_t n = 0; n < g.size(); ++n) acc += std::conj(g[n]) * config.coefficient(n);
    return acc;
}

std::size_t count_zero_entries(std::span<const Complex> g) {
    return static_cast<std::size_t>(std::count(g.begin(), g.end(), Complex{}));
}

RisConfiguration coherent_beamformer(std::span<const Complex> g) {
    std::vector<double> phases(g.size());
    std::transform(g.begin(), g.end(), phases.begin(),
                   [](Complex c) { return c == Complex{} ? 0.0 : -std::arg(c); });
    return RisConfiguration(std::move(phases));
}

RisConfiguration partition_configuration(std::span<const Complex> g, std::span<const std::size_t> pi_set) {
    std::vector<double> phases(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) phases[n] = g[n] == Complex{} ? 0.0 : -std::arg(g[n]);
    for (std::size_t n : pi_set) {
        if (n >= g.size()) throw std::out_of_range("partition index out of range");
        phases[n] += std::numbers::pi;
    }
    return RisConfiguration(std::move(phases));
}

PhasorRotation phasor_rotation(std::span<const Complex> g) {
    const std::size_t n_elements = g.size();
    PhasorRotation out;
    if (n_elements == 0) return out;

    std::vector<double> amplitude(n_elements);
    std::transform(g.begin(), g.end(), amplitude.begin(), [](Complex c) { return std::abs(c); });

    // order[i] = mu(i): element index of the i-th shortest phasor
    std::vector<std::size_t> order(n_elements);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return amplitude[a] < amplitude[b]; });

    const double total = std::accumulate(amplitude.begin(), amplitude.end(), 0.0);
    double prefix = 0.0;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_split = 1;
    for (std::size_t split = 1; split <= n_elements; ++split) {
        prefix += amplitude[order[split - 1]];
        const double gap = std::abs(prefix - (total - prefix));
        if (gap < best) {
            best = gap;
            best_split = split;
        }
    }

    PartitionResult& part = out.partition;
    part.split_size = best_split;
    part.zero_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_split));
    part.pi_set.assign(order.begin() + static_cast<std::ptrdiff_t>(best_split), order.end());
    std::sort(part.zero_set.begin(), part.zero_set.end());
    std::sort(part.pi_set.begin(), part.pi_set.end());

    double zero_sum = 0.0;
    double pi_sum = 0.0;
    for (std::size_t n : part.zero_set) zero_sum += amplitude[n];
    for (std::size_t n : part.pi_set) pi_sum += amplitude[n];
    part.imbalance = std::abs(zero_sum - pi_sum);

    out.config = partition_configuration(g, part.pi_set);
    part.residual = std::abs(effective_channel(g, out.config));
    return out;
}

PartitionResult brute_force_partition(std::span<const Complex> g) {
    const std::size_t n_elements = g.size();
    if (n_elements > kBruteForceMaxElements) {
        throw std::length_error("brute_force_partition: N = " + std::to_string(n_elements) + " exceeds " +
                                std::to_string(kBruteForceMaxElements));
    }
    PartitionResult result;
    if (n_elements == 0) return result;

    std::vector<double> amplitude(n_elements);
    std::transform(g.begin(), g.end(), amplitude.begin(), [](Complex c) { return std::abs(c); });

    // Element 0 stays in the zero set (a global sign flip leaves |sum| unchanged).
    // Bit i of the mask places element i + 1 in the pi set; Gray-code order
    // flips exactly one sign per step.
    const std::uint64_t free_bits = n_elements - 1;
    const std::uint64_t count = std::uint64_t{1} << free_bits;
    double sum = std::accumulate(amplitude.begin(), amplitude.end(), 0.0);
    std::uint64_t mask = 0;
    std::uint64_t best_mask = 0;
    double best = std::abs(sum);
    for (std::uint64_t k = 1; k < count; ++k) {
        const auto bit = static_cast<unsigned>(std::countr_zero(k));
        mask ^= std::uint64_t{1} << bit;
        const double a = amplitude[bit + 1];
        sum += (mask >> bit & 1U) ? -2.0 * a : 2.0 * a;
        const double gap = std::abs(sum);
        if (gap < best) {
            best = gap;
            best_mask = mask;
        }
    }

    double zero_sum = amplitude[0];
    double pi_sum = 0.0;
    result.zero_set.push_back(0);
    for (std::size_t n = 1; n < n_elements; ++n) {
        if (best_mask >> (n - 1) & 1U) {
            result.pi_set.push_back(n);
            pi_sum += amplitude[n];
        } else {
            result.zero_set.push_back(n);
            zero_sum += amplitude[n];
        }
    }
    result.split_size = result.zero_set.size();
    result.imbalance = std::abs(zero_sum - pi_sum);
    result.residual = result.imbalance;
    return result;
}

void ProjectionSettings::validate(std::size_t num_elements) const {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw ConfigError("nulling.tolerance", "must be positive");
    }
    if (max_iterations < 1) throw ConfigError("nulling.max_iterations", "must be at least 1");
    if (initial.size() != num_elements) {
        throw DimensionError("interference_nulling: initial configuration has " + std::to_string(initial.size()) +
                             " entries, channel " + std::to_string(num_elements));
    }
}

void project_onto_null_hyperplane(std::span<const Complex> g, double g_norm_sq, std::span<Complex> psi) {
    Complex inner{};
    for (std::size_t n = 0; n < g.size(); ++n) inner += std::conj(g[n]) * psi[n];
    const Complex scale = inner / g_norm_sq;
    for (std::size_t n = 0; n < g.size(); ++n) psi[n] -= scale * g[n];
}

std::size_t project_onto_unit_modulus(std::span<Complex> psi, std::span<const Complex> fallback,
                                      double zero_threshold) {
    std::size_t zeros = 0;
    for (std::size_t n = 0; n < psi.size(); ++n) {
        const double magnitude = std::sqrt(std::norm(psi[n]));
        if (magnitude <= zero_threshold) {
            psi[n] = fallback[n];
            ++zeros;
        } else {
            psi[n] /= magnitude;
        }
    }
    return zeros;
}

ProjectionOutcome interference_nulling(std::span<const Complex> g, const ProjectionSettings& settings,
                                       const ProjectionObserver& observer) {
    settings.validate(g.size());
    double g_norm_sq = 0.0;
    for (Complex c : g) g_norm_sq += std::norm(c);
    if (!(g_norm_sq > 0.0)) throw std::invalid_argument("interference_nulling: channel has zero norm");
    const double threshold = settings.tolerance * std::sqrt(g_norm_sq);

    ProjectionOutcome out;
    ComplexVector previous = settings.initial.coefficients();
    ComplexVector psi = previous;
    for (std::size_t t = 1; t <= settings.max_iterations; ++t) {
        project_onto_null_hyperplane(g, g_norm_sq, psi);
        if (observer) observer(t, psi);
        out.zero_projection_events += project_onto_unit_modulus(psi, previous);
        out.iterations = t;

        Complex inner{};
        for (std::size_t n = 0; n < g.size(); ++n) inner += std::conj(g[n]) * psi[n];
        if (std::abs(inner) <= threshold) break;
        previous = psi;
    }

    out.config = RisConfiguration::from_coefficients(psi);
    out.residual = std::abs(effective_channel(g, out.config));
    out.converged = out.residual <= threshold;
    return out;
}

RisConfiguration random_configuration(std::size_t num_elements, RandomStream& rng) {
    std::vector<double> phases(num_elements);
    for (double& theta : phases) theta = rng.uniform(0.0, kTwoPi);
    return RisConfiguration(std::move(phases));
}

}  // namespace rismux
