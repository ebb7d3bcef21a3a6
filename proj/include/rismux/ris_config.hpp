#pragma once

// RIS reflection-coefficient design: the coherent passive beamformer, the
// phasor-rotation partition heuristic with its exhaustive oracle, and
// alternating-projection interference nulling.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rismux/random.hpp"
#include "rismux/types.hpp"

namespace rismux {

/// Unit-modulus reflection vector. Phases are the stored state, each wrapped to
/// [0, 2pi); coefficients psi_n = exp(-j theta_n) are derived on demand, so
/// |psi_n| = 1 holds by construction.
class RisConfiguration {
public:
    RisConfiguration() = default;
    explicit RisConfiguration(std::vector<double> phases);

    /// theta_n = -arg(psi_n). Zero coefficients map to phase 0.
    static RisConfiguration from_coefficients(std::span<const Complex> coefficients);

    std::size_t size() const noexcept { return phases_.size(); }
    const std::vector<double>& phases() const noexcept { return phases_; }
    Complex coefficient(std::size_t n) const { return std::polar(1.0, -phases_[n]); }
    ComplexVector coefficients() const;

    bool operator==(const RisConfiguration&) const = default;

private:
    std::vector<double> phases_;
};

/// g^H psi
Complex effective_channel(std::span<const Complex> g, const RisConfiguration& config);

/// Number of exactly-zero entries (phases undefined under arg()).
std::size_t count_zero_entries(std::span<const Complex> g);

/// theta_n = -arg(g_n); g^H psi = sum |g_n|. Zero entries get phase 0.
RisConfiguration coherent_beamformer(std::span<const Complex> g);

struct PartitionResult {
    std::vector<std::size_t> zero_set;  // phasors kept at angle 0
    std::vector<std::size_t> pi_set;    // phasors rotated by pi
    std::size_t split_size = 0;         // |zero_set|
    /// |sum_{zero_set} A_n - sum_{pi_set} A_n|, A_n = |g_n|
    double imbalance = 0.0;
    /// Achieved |g^H psi| of the returned configuration. For the brute-force
    /// oracle, which returns no configuration, equal to `imbalance`.
    double residual = 0.0;
};

/// Phasors pointing at 0 for `zero_set` and at pi for `pi_set`.
RisConfiguration partition_configuration(std::span<const Complex> g, std::span<const std::size_t> pi_set);

struct PhasorRotation {
    RisConfiguration config;
    PartitionResult partition;
};

/// Sorts amplitudes ascending (stable), picks the prefix split N* in [1, N]
/// minimising |prefix - suffix| (smallest N* on ties) and rotates the suffix by pi.
PhasorRotation phasor_rotation(std::span<const Complex> g);

inline constexpr std::size_t kBruteForceMaxElements = 24;

/// Globally optimal two-set partition over all sign assignments. Refuses
/// N > kBruteForceMaxElements with std::length_error.
PartitionResult brute_force_partition(std::span<const Complex> g);

struct ProjectionSettings {
    double tolerance = 1e-6;  // relative to ||g||_2
    std::size_t max_iterations = 1000;
    RisConfiguration initial;

    void validate(std::size_t num_elements) const;
};

struct ProjectionOutcome {
    RisConfiguration config;
    double residual = 0.0;  // |g^H psi|
    std::size_t iterations = 0;
    bool converged = false;
    /// Elements whose hyperplane projection vanished and kept their previous phase.
    std::size_t zero_projection_events = 0;
};

/// psi - (g^H psi / ||g||^2) g, in place.
void project_onto_null_hyperplane(std::span<const Complex> g, double g_norm_sq, std::span<Complex> psi);

/// psi_n / |psi_n|, in place. Entries at or below `zero_threshold` keep the
/// value in `fallback`. Returns the number of such entries.
std::size_t project_onto_unit_modulus(std::span<Complex> psi, std::span<const Complex> fallback,
                                      double zero_threshold = 1e-12);

/// Receives (iteration, iterate after the hyperplane projection).
using ProjectionObserver = std::function<void(std::size_t, std::span<const Complex>)>;

/// Alternates projections onto {g^H psi = 0} and the unit-modulus torus until
/// |g^H psi| <= tolerance * ||g||_2 or max_iterations. Non-convergence is
/// reported through the outcome, not thrown.
ProjectionOutcome interference_nulling(std::span<const Complex> g, const ProjectionSettings& settings,
                                       const ProjectionObserver& observer = {});

/// I.i.d. uniform phases on [0, 2pi).
RisConfiguration random_configuration(std::size_t num_elements, RandomStream& rng);

}  // namespace rismux
