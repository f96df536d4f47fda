#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace skyshare {

struct ScenarioConfig;

constexpr double kEarthRadius = 6'371'000.0;  // spherical Earth, meters

struct GeodeticPosition {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180]
    double altitude_m = 0.0;     // >= 0

    bool valid() const noexcept;
    friend bool operator==(const GeodeticPosition&, const GeodeticPosition&) = default;
};

struct CartesianPosition {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const noexcept;
    friend bool operator==(const CartesianPosition&, const CartesianPosition&) = default;
};

CartesianPosition operator-(const CartesianPosition& a, const CartesianPosition& b) noexcept;
double dot(const CartesianPosition& a, const CartesianPosition& b) noexcept;

CartesianPosition geodetic_to_cartesian(const GeodeticPosition& p);
GeodeticPosition cartesian_to_geodetic(const CartesianPosition& p);

/// Straight-line (chord) distance in meters.
double slant_range(const GeodeticPosition& a, const GeodeticPosition& b);

/// Elevation of `sat` above the local horizontal plane at `ground`, degrees.
/// Throws GeometryError for coincident points.
double elevation_angle(const GeodeticPosition& ground, const GeodeticPosition& sat);

/// One-way propagation delay in seconds.
double propagation_delay(const GeodeticPosition& a, const GeodeticPosition& b);

/// Angle in degrees between the boresight ray (from -> to) and the ray
/// (from -> target). Throws GeometryError on degenerate rays.
double off_axis_angle(const CartesianPosition& boresight_from,
                      const CartesianPosition& boresight_to,
                      const CartesianPosition& target);

/// Great-circle distance between the surface projections, meters.
double ground_distance(const GeodeticPosition& a, const GeodeticPosition& b);

/// Point reached by travelling `distance_m` along the surface from `origin`
/// on initial bearing `bearing_deg` (clockwise from north). Altitude is copied.
GeodeticPosition destination(const GeodeticPosition& origin, double bearing_deg, double distance_m);

struct TbsSite {
    GeodeticPosition position;
    int reuse_color = 0;
    int hex_q = 0;  // axial hex coordinates of the cell
    int hex_r = 0;
};

struct TerrestrialUser {
    GeodeticPosition position;
    std::size_t serving_tbs = 0;
};

struct Topology {
    GeodeticPosition satellite;
    std::vector<TbsSite> tbs_sites;
    std::vector<TerrestrialUser> tus;  // grouped by TBS: TU n belongs to TBS n / V
    std::vector<GeodeticPosition> laas;
    std::uint64_t seed = 0;

    std::size_t num_tbs() const noexcept { return tbs_sites.size(); }
    std::size_t num_tus() const noexcept { return tus.size(); }
    std::size_t num_laas() const noexcept { return laas.size(); }

    /// SHA-256 over positions and seed only (reuse colors excluded), so a
    /// reuse-factor sweep can verify it is replaying the same topologies.
    std::string layout_digest() const;
};

/// Axial coordinates of the first `count` cells of a hexagonal spiral.
/// Centered hexagonal counts (1, 7, 19, 37, ...) give complete hexagons;
/// any other count stops part-way around the outermost ring.
std::vector<std::pair<int, int>> hex_spiral(std::size_t count);

/// Reuse color of an axial hex cell for reuse factor F. F in {1, 3, 4, 7}
/// yields the standard patterns with no co-colored neighbours; other values
/// fall back to (q + 2r) mod F.
int hex_reuse_color(int q, int r, int reuse_factor);

Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed);

/// Human-readable list of violated topology invariants (empty when valid).
std::vector<std::string> check_topology(const Topology& topology, const ScenarioConfig& config);

}  // namespace skyshare
