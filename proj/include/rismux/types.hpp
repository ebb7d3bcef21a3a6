#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rismux {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Position3D&) const = default;
};

inline double distance(const Position3D& a, const Position3D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double norm(const Position3D& p) { return distance(p, Position3D{}); }

/// Wraps an angle into [0, 2pi).
inline double wrap_phase(double angle) {
    double wrapped = std::fmod(angle, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    // fmod of a value just below a multiple of 2pi can land exactly on 2pi after the shift
    if (wrapped >= kTwoPi) wrapped = 0.0;
    return wrapped;
}

// Error hierarchy. Everything derives from std::invalid_argument or
// std::runtime_error so callers can catch broadly.

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RegionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid configuration value. `key()` is the dotted path of the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& what)
        : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace rismux
