#include "rismux/random.hpp"

namespace rismux {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag) noexcept {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ trial);
    h = mix64(h ^ static_cast<std::uint64_t>(tag));
    return h;
}

}  // namespace rismux
