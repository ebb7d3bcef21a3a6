#pragma once

#include <cstdint>
#include <random>

namespace rismux {

/// Purpose tags for per-trial substreams. Values are part of the
/// reproducibility contract: changing one changes every result table.
enum class StreamTag : std::uint64_t {
    embb_position = 1,
    urllc_position = 2,
    detection = 3,
    random_configuration = 4,
    nulling_start = 5,
    generic = 99,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the substream identified by (master seed, trial index, purpose).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag) noexcept;

/// Caller-owned pseudo-random stream. Uniform variates are produced from the
/// raw 64-bit engine output so draws are identical across standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}
    RandomStream(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag)
        : RandomStream(derive_seed(master_seed, trial, tag)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace rismux
