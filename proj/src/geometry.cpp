#include "rismux/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace rismux {

namespace {

std::size_t exact_sqrt(std::size_t n) {
    auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    while (k * k > n) --k;
    while ((k + 1) * (k + 1) <= n) ++k;
    return k;
}

std::size_t checked_side(std::size_t num_elements, double wavelength) {
    if (num_elements == 0) throw GeometryError("RIS must have at least one element");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
        throw GeometryError("wavelength must be positive and finite");
    }
    const std::size_t k = exact_sqrt(num_elements);
    if (k * k != num_elements) {
        throw GeometryError("element count " + std::to_string(num_elements) + " is not a perfect square");
    }
    return k;
}

}  // namespace

std::vector<Position3D> element_positions(std::size_t num_elements, double wavelength) {
    const std::size_t k = checked_side(num_elements, wavelength);
    const double spacing = wavelength / 2.0;
    const double offset = (static_cast<double>(k) - 1.0) / 2.0;

    std::vector<Position3D> positions;
    positions.reserve(num_elements);
    for (std::size_t row = 0; row < k; ++row) {
        for (std::size_t col = 0; col < k; ++col) {
            positions.push_back({0.0, (static_cast<double>(col) - offset) * spacing,
                                 (static_cast<double>(row) - offset) * spacing});
        }
    }
    return positions;
}

RisGeometry::RisGeometry(std::size_t num_elements, double wavelength)
    : side_(checked_side(num_elements, wavelength)),
      wavelength_(wavelength),
      positions_(element_positions(num_elements, wavelength)),
      active_(0) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < positions_.size(); ++n) {
        const double r = norm(positions_[n]);
        if (r < best) {
            best = r;
            active_ = n;
        }
    }
}

double far_field_distance(std::size_t num_elements, double wavelength) {
    const double root = std::sqrt(static_cast<double>(num_elements)) - 1.0;
    return wavelength * root * root / 2.0;
}

Position3D bs_position(double radius) {
    const double c = radius / std::numbers::sqrt2;
    return {c, c, 0.0};
}

Position3D from_spherical(double radius, double polar, double azimuth) {
    const double s = std::sin(polar);
    return {radius * s * std::cos(azimuth), radius * s * std::sin(azimuth), radius * std::cos(polar)};
}

void UeRegion::validate(double far_field) const {
    const double all[] = {radial_min, radial_max, azimuth_min, azimuth_max, z_min, z_max};
    if (!std::all_of(std::begin(all), std::end(all), [](double v) { return std::isfinite(v); })) {
        throw RegionError("region bounds must be finite");
    }
    if (radial_min > radial_max) throw RegionError("radial bounds out of order");
    if (azimuth_min > azimuth_max) throw RegionError("azimuth bounds out of order");
    if (z_min > z_max) throw RegionError("vertical bounds out of order");
    if (radial_min < far_field) {
        throw RegionError("radial lower bound " + std::to_string(radial_min) +
                          " m lies inside the far-field distance " + std::to_string(far_field) + " m");
    }
    if (!(radial_min > 0.0)) throw RegionError("radial lower bound must be positive");
    if (std::abs(z_min) >= radial_min || std::abs(z_max) >= radial_min) {
        throw RegionError("vertical bounds must be smaller in magnitude than the radial lower bound");
    }
}

std::pair<double, double> UeRegion::polar_bounds(double radius) const {
    const double lo = z_max / radius;  // cos of the smallest polar angle
    const double hi = z_min / radius;
    if (!(radius > 0.0) || lo < -1.0 || hi > 1.0 || z_min > z_max) {
        throw RegionError("empty polar-angle interval at radius " + std::to_string(radius));
    }
    return {std::acos(std::min(lo, 1.0)), std::acos(std::max(hi, -1.0))};
}

std::string_view to_string(SamplingMeasure measure) {
    return measure == SamplingMeasure::Volume ? "volume" : "coordinate";
}

std::optional<SamplingMeasure> parse_sampling_measure(std::string_view name) {
    if (name == "coordinate") return SamplingMeasure::Coordinate;
    if (name == "volume") return SamplingMeasure::Volume;
    return std::nullopt;
}

Position3D sample_ue_position(const UeRegion& region, RandomStream& rng) {
    if (region.measure == SamplingMeasure::Volume) {
        const double r2 = rng.uniform(region.radial_min * region.radial_min, region.radial_max * region.radial_max);
        const double radius = std::sqrt(r2);
        const double z = rng.uniform(region.z_min, region.z_max);
        const double azimuth = rng.uniform(region.azimuth_min, region.azimuth_max);
        Position3D p = from_spherical(radius, std::acos(std::clamp(z / radius, -1.0, 1.0)), azimuth);
        p.z = z;
        return p;
    }
    const double radius = rng.uniform(region.radial_min, region.radial_max);
    const auto [polar_min, polar_max] = region.polar_bounds(radius);
    const double polar = rng.uniform(polar_min, polar_max);
    const double azimuth = rng.uniform(region.azimuth_min, region.azimuth_max);
    Position3D p = from_spherical(radius, polar, azimuth);
    // cos/acos round trips can leave z a few ulps outside the bound
    p.z = std::clamp(p.z, region.z_min, region.z_max);
    return p;
}

void PathLossParams::validate() const {
    if (!(reference_gain > 0.0) || !std::isfinite(reference_gain)) {
        throw ConfigError("pathloss.reference_gain", "must be positive");
    }
    if (!(reference_distance > 0.0) || !std::isfinite(reference_distance)) {
        throw ConfigError("pathloss.reference_distance_m", "must be positive");
    }
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw ConfigError("pathloss.exponent", "must be positive");
    }
}

ComplexVector los_channel(const Position3D& node, const RisGeometry& geometry, const PathLossParams& pl) {
    const double amplitude_ref = std::sqrt(pl.reference_gain);
    const double half_exponent = pl.exponent / 2.0;
    const double wavenumber = kTwoPi / geometry.wavelength();

    ComplexVector h;
    h.reserve(geometry.num_elements());
    for (const Position3D& element : geometry.positions()) {
        const double d = distance(node, element);
        if (!(d > 0.0)) throw GeometryError("node coincides with an RIS element");
        const double amplitude = amplitude_ref * std::pow(pl.reference_distance / d, half_exponent);
        h.push_back(std::polar(amplitude, -wavenumber * d));
    }
    return h;
}

ComplexVector cascaded_channel(std::span<const Complex> h_bs, std::span<const Complex> h_ue) {
    if (h_bs.size() != h_ue.size()) {
        throw DimensionError("cascaded_channel: length mismatch (" + std::to_string(h_bs.size()) + " vs " +
                             std::to_string(h_ue.size()) + ")");
    }
    ComplexVector g(h_bs.size());
    std::transform(h_bs.begin(), h_bs.end(), h_ue.begin(), g.begin(), std::multiplies<>{});
    return g;
}

ChannelRealization ChannelRealization::from_links(ComplexVector h_bs, ComplexVector h_embb,
                                                  ComplexVector h_urllc) {
    ChannelRealization c;
    c.g_embb = cascaded_channel(h_bs, h_embb);
    c.g_urllc = cascaded_channel(h_bs, h_urllc);
    c.h_bs = std::move(h_bs);
    c.h_embb = std::move(h_embb);
    c.h_urllc = std::move(h_urllc);
    return c;
}

ChannelRealization synthesize_channels(const RisGeometry& geometry, const PathLossParams& pl,
                                       const Position3D& bs, const Position3D& embb_ue,
                                       const Position3D& urllc_ue) {
    return ChannelRealization::from_links(los_channel(bs, geometry, pl), los_channel(embb_ue, geometry, pl),
                                          los_channel(urllc_ue, geometry, pl));
}

}  // namespace rismux
