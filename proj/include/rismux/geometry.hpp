#pragma once

// Deployment geometry and line-of-sight channel synthesis.
//
// Coordinate frame: the RIS lies in the yz-plane centred at the origin and
// faces +x. Spherical coordinates (radius, polar, azimuth) use the polar angle
// from +z and the azimuth from +x in the xy-plane.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rismux/random.hpp"
#include "rismux/types.hpp"

namespace rismux {

/// Square uniform planar array with half-wavelength spacing.
class RisGeometry {
public:
    /// Throws GeometryError unless `num_elements` is a positive perfect square
    /// and `wavelength` is positive and finite.
    RisGeometry(std::size_t num_elements, double wavelength);

    std::size_t num_elements() const noexcept { return positions_.size(); }
    std::size_t side() const noexcept { return side_; }
    double wavelength() const noexcept { return wavelength_; }
    double spacing() const noexcept { return wavelength_ / 2.0; }
    const std::vector<Position3D>& positions() const noexcept { return positions_; }

    /// Index of the active (receiving) element: the grid centre for odd side
    /// length, otherwise the lowest-index element nearest the origin.
    std::size_t active_element() const noexcept { return active_; }

private:
    std::size_t side_;
    double wavelength_;
    std::vector<Position3D> positions_;
    std::size_t active_;
};

/// Row-major k x k grid in the yz-plane; row index runs along z, column along y.
std::vector<Position3D> element_positions(std::size_t num_elements, double wavelength);

/// lambda * (sqrt(N) - 1)^2 / 2
double far_field_distance(std::size_t num_elements, double wavelength);

/// BS location on the 45 degree line of the xy-plane at the given radius.
Position3D bs_position(double radius);

enum class SamplingMeasure {
    Coordinate,  // independent uniform radius, polar angle and azimuth
    Volume,      // uniform over the region's volume
};

std::string_view to_string(SamplingMeasure measure);
std::optional<SamplingMeasure> parse_sampling_measure(std::string_view name);

struct UeRegion {
    double radial_min = 0.0;
    double radial_max = 100.0;
    double azimuth_min = 1.5 * std::numbers::pi;
    double azimuth_max = 2.0 * std::numbers::pi;
    double z_min = -3.0;
    double z_max = 3.0;
    SamplingMeasure measure = SamplingMeasure::Coordinate;

    /// Throws RegionError when bounds are unordered, non-finite, the radial
    /// floor lies inside `far_field`, or |z| bounds reach the radial floor.
    void validate(double far_field) const;

    /// Polar-angle interval keeping z inside [z_min, z_max] at `radius`.
    /// Throws RegionError when the interval is empty.
    std::pair<double, double> polar_bounds(double radius) const;
};

/// Coordinate measure: draws radius, then the polar angle within the
/// z-admissible interval for that radius, then azimuth, each uniformly over its
/// own interval. Volume measure: radius with density proportional to itself
/// (the z-slab of a sphere has area linear in the radius), z uniform, azimuth
/// uniform.
Position3D sample_ue_position(const UeRegion& region, RandomStream& rng);

Position3D from_spherical(double radius, double polar, double azimuth);

struct PathLossParams {
    double reference_gain = 1.0;      // gamma_0
    double reference_distance = 1.0;  // d_0, meters
    double exponent = 3.67;           // beta

    void validate() const;
};

/// Per-element spherical-wave LoS channel:
///   h[n] = sqrt(gamma_0) * (d_0 / d_n)^(beta/2) * exp(-j 2 pi d_n / lambda).
/// Throws GeometryError if the node coincides with an element.
ComplexVector los_channel(const Position3D& node, const RisGeometry& geometry, const PathLossParams& pl);

/// Elementwise product diag(h_bs) h_ue.
ComplexVector cascaded_channel(std::span<const Complex> h_bs, std::span<const Complex> h_ue);

/// One block-fading realization of every channel in the two-UE uplink.
struct ChannelRealization {
    ComplexVector h_bs;
    ComplexVector h_embb;
    ComplexVector h_urllc;
    ComplexVector g_embb;
    ComplexVector g_urllc;

    static ChannelRealization from_links(ComplexVector h_bs, ComplexVector h_embb, ComplexVector h_urllc);

    std::size_t size() const noexcept { return h_bs.size(); }
};

ChannelRealization synthesize_channels(const RisGeometry& geometry, const PathLossParams& pl,
                                       const Position3D& bs, const Position3D& embb_ue,
                                       const Position3D& urllc_ue);

}  // namespace rismux
