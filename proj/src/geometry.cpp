#include "skyshare/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "skyshare/config.hpp"
#include "skyshare/digest.hpp"
#include "skyshare/errors.hpp"
#include "skyshare/rng.hpp"
#include "skyshare/units.hpp"

namespace skyshare {

bool GeodeticPosition::valid() const noexcept
{
    return std::isfinite(latitude_deg) && std::isfinite(longitude_deg) && std::isfinite(altitude_m) &&
           latitude_deg >= -90.0 && latitude_deg <= 90.0 && longitude_deg >= -180.0 &&
           longitude_deg <= 180.0 && altitude_m >= 0.0;
}

double CartesianPosition::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

CartesianPosition operator-(const CartesianPosition& a, const CartesianPosition& b) noexcept
{
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

double dot(const CartesianPosition& a, const CartesianPosition& b) noexcept
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

namespace {

CartesianPosition cross(const CartesianPosition& a, const CartesianPosition& b) noexcept
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

int positive_mod(int value, int modulus)
{
    int m = value % modulus;
    return m < 0 ? m + modulus : m;
}

}  // namespace

CartesianPosition geodetic_to_cartesian(const GeodeticPosition& p)
{
    const double r = kEarthRadius + p.altitude_m;
    const double lat = p.latitude_deg * kDegToRad;
    const double lon = p.longitude_deg * kDegToRad;
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)};
}

GeodeticPosition cartesian_to_geodetic(const CartesianPosition& p)
{
    const double r = p.norm();
    if (r == 0.0)
        throw GeometryError("cartesian_to_geodetic: point at Earth's center");
    return {std::asin(std::clamp(p.z / r, -1.0, 1.0)) * kRadToDeg, std::atan2(p.y, p.x) * kRadToDeg,
            r - kEarthRadius};
}

double slant_range(const GeodeticPosition& a, const GeodeticPosition& b)
{
    return (geodetic_to_cartesian(a) - geodetic_to_cartesian(b)).norm();
}

double elevation_angle(const GeodeticPosition& ground, const GeodeticPosition& sat)
{
    const CartesianPosition g = geodetic_to_cartesian(ground);
    const CartesianPosition los = geodetic_to_cartesian(sat) - g;
    const double range = los.norm();
    if (range == 0.0)
        throw GeometryError("elevation_angle: coincident points");
    const double sin_elev = dot(los, g) / (range * g.norm());
    return std::asin(std::clamp(sin_elev, -1.0, 1.0)) * kRadToDeg;
}

double propagation_delay(const GeodeticPosition& a, const GeodeticPosition& b)
{
    return slant_range(a, b) / kSpeedOfLight;
}

double off_axis_angle(const CartesianPosition& boresight_from, const CartesianPosition& boresight_to,
                      const CartesianPosition& target)
{
    const CartesianPosition axis = boresight_to - boresight_from;
    const CartesianPosition ray = target - boresight_from;
    if (axis.norm() == 0.0)
        throw GeometryError("off_axis_angle: boresight endpoints coincide");
    if (ray.norm() == 0.0)
        throw GeometryError("off_axis_angle: target coincides with boresight origin");
    // atan2 keeps precision near 0 and 180 degrees where acos does not.
    return std::atan2(cross(axis, ray).norm(), dot(axis, ray)) * kRadToDeg;
}

double ground_distance(const GeodeticPosition& a, const GeodeticPosition& b)
{
    const double lat1 = a.latitude_deg * kDegToRad;
    const double lat2 = b.latitude_deg * kDegToRad;
    const double dlat = lat2 - lat1;
    const double dlon = (b.longitude_deg - a.longitude_deg) * kDegToRad;
    const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2.0 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

GeodeticPosition destination(const GeodeticPosition& origin, double bearing_deg, double distance_m)
{
    const double delta = distance_m / kEarthRadius;
    const double theta = bearing_deg * kDegToRad;
    const double lat1 = origin.latitude_deg * kDegToRad;
    const double lon1 = origin.longitude_deg * kDegToRad;
    const double lat2 =
        std::asin(std::sin(lat1) * std::cos(delta) + std::cos(lat1) * std::sin(delta) * std::cos(theta));
    const double lon2 = lon1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                                          std::cos(delta) - std::sin(lat1) * std::sin(lat2));
    double lon_deg = lon2 * kRadToDeg;
    if (lon_deg > 180.0)
        lon_deg -= 360.0;
    else if (lon_deg < -180.0)
        lon_deg += 360.0;
    return {lat2 * kRadToDeg, lon_deg, origin.altitude_m};
}

std::string Topology::layout_digest() const
{
    Sha256 h;
    auto put = [&h](const GeodeticPosition& p) {
        h.update(p.latitude_deg);
        h.update(p.longitude_deg);
        h.update(p.altitude_m);
    };
    h.update(seed);
    put(satellite);
    h.update(static_cast<std::uint64_t>(tbs_sites.size()));
    for (const auto& s : tbs_sites)
        put(s.position);
    h.update(static_cast<std::uint64_t>(tus.size()));
    for (const auto& t : tus) {
        put(t.position);
        h.update(static_cast<std::uint64_t>(t.serving_tbs));
    }
    h.update(static_cast<std::uint64_t>(laas.size()));
    for (const auto& l : laas)
        put(l);
    return h.finish_hex();
}

std::vector<std::pair<int, int>> hex_spiral(std::size_t count)
{
    static constexpr std::array<std::pair<int, int>, 6> kDirections{
        {{+1, 0}, {+1, -1}, {0, -1}, {-1, 0}, {-1, +1}, {0, +1}}};
    std::vector<std::pair<int, int>> cells;
    cells.reserve(count);
    if (count == 0)
        return cells;
    cells.emplace_back(0, 0);
    for (int ring = 1; cells.size() < count; ++ring) {
        int q = kDirections[4].first * ring;
        int r = kDirections[4].second * ring;
        for (int side = 0; side < 6 && cells.size() < count; ++side) {
            for (int step = 0; step < ring && cells.size() < count; ++step) {
                cells.emplace_back(q, r);
                q += kDirections[side].first;
                r += kDirections[side].second;
            }
        }
    }
    return cells;
}

int hex_reuse_color(int q, int r, int reuse_factor)
{
    switch (reuse_factor) {
    case 1:
        return 0;
    case 3:
        return positive_mod(q - r, 3);
    case 4:
        return positive_mod(q, 2) + 2 * positive_mod(r, 2);
    case 7:
        return positive_mod(q + 3 * r, 7);
    default:
        return positive_mod(q + 2 * r, reuse_factor);
    }
}

namespace {

// Planar offset (east, north) from the region center to a geodetic point.
GeodeticPosition offset_to_geodetic(const GeodeticPosition& center, double east, double north, double altitude)
{
    const double dist = std::hypot(east, north);
    GeodeticPosition p = dist == 0.0 ? center : destination(center, std::atan2(east, north) * kRadToDeg, dist);
    p.altitude_m = altitude;
    return p;
}

}  // namespace

Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed)
{
    Topology topo;
    topo.seed = seed;
    topo.satellite = {config.subsatellite_lat_deg, config.subsatellite_lon_deg, config.satellite_altitude_m};

    const double radius = config.cell_radius_m;
    const GeodeticPosition center = config.region_center();
    const int reuse = config.reuse_factor();

    // Pointy-top hexagons with circumradius equal to the coverage radius.
    std::vector<std::pair<double, double>> planar;
    for (auto [q, r] : hex_spiral(config.num_tbs)) {
        const double east = radius * std::sqrt(3.0) * (q + r / 2.0);
        const double north = radius * 1.5 * r;
        planar.emplace_back(east, north);
        topo.tbs_sites.push_back({offset_to_geodetic(center, east, north, 0.0), hex_reuse_color(q, r, reuse), q, r});
    }

    Engine tu_engine(derive_seed(seed, SeedStream::topology, {1}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t m = 0; m < topo.tbs_sites.size(); ++m) {
        for (std::size_t v = 0; v < config.tus_per_tbs; ++v) {
            const double dist = radius * std::sqrt(unit(tu_engine));
            const double bearing = 360.0 * unit(tu_engine);
            GeodeticPosition p = destination(topo.tbs_sites[m].position, bearing, dist);
            p.altitude_m = 0.0;
            topo.tus.push_back({p, m});
        }
    }

    // LAAs: uniform over the union of coverage disks, by rejection from the
    // bounding box of the planar layout.
    double min_e = 0, max_e = 0, min_n = 0, max_n = 0;
    for (std::size_t i = 0; i < planar.size(); ++i) {
        const auto [e, n] = planar[i];
        min_e = i == 0 ? e - radius : std::min(min_e, e - radius);
        max_e = i == 0 ? e + radius : std::max(max_e, e + radius);
        min_n = i == 0 ? n - radius : std::min(min_n, n - radius);
        max_n = i == 0 ? n + radius : std::max(max_n, n + radius);
    }
    Engine laa_engine(derive_seed(seed, SeedStream::topology, {2}));
    std::uniform_real_distribution<double> east_dist(min_e, max_e);
    std::uniform_real_distribution<double> north_dist(min_n, max_n);
    constexpr std::size_t kMaxAttempts = 10'000'000;
    std::size_t attempts = 0;
    while (topo.laas.size() < config.num_laas && !topo.tbs_sites.empty()) {
        if (++attempts > kMaxAttempts)
            throw GeometryError("generate_topology: LAA rejection sampling did not converge");
        const double e = east_dist(laa_engine);
        const double n = north_dist(laa_engine);
        GeodeticPosition p = offset_to_geodetic(center, e, n, config.laa_altitude_m);
        const bool covered = std::any_of(topo.tbs_sites.begin(), topo.tbs_sites.end(), [&](const TbsSite& s) {
            return ground_distance(p, s.position) <= radius;
        });
        if (covered)
            topo.laas.push_back(p);
    }
    return topo;
}

std::vector<std::string> check_topology(const Topology& topo, const ScenarioConfig& config)
{
    std::vector<std::string> issues;
    const double tol = 1e-6;
    if (topo.num_tbs() != config.num_tbs)
        issues.push_back("TBS count differs from M");
    if (topo.num_tus() != config.num_tus())
        issues.push_back("TU count differs from M*V");
    if (topo.num_laas() != config.num_laas)
        issues.push_back("LAA count differs from U");
    if (!topo.satellite.valid() || std::abs(topo.satellite.altitude_m - config.satellite_altitude_m) > tol)
        issues.push_back("satellite position invalid or at wrong altitude");

    const int reuse = config.reuse_factor();
    for (std::size_t m = 0; m < topo.num_tbs(); ++m) {
        const auto& s = topo.tbs_sites[m];
        if (!s.position.valid())
            issues.push_back("TBS " + std::to_string(m) + " has invalid position");
        if (s.reuse_color < 0 || s.reuse_color >= reuse)
            issues.push_back("TBS " + std::to_string(m) + " reuse color out of range");
    }
    for (std::size_t n = 0; n < topo.num_tus(); ++n) {
        const auto& tu = topo.tus[n];
        if (!tu.position.valid() || tu.serving_tbs >= topo.num_tbs()) {
            issues.push_back("TU " + std::to_string(n) + " invalid");
            continue;
        }
        if (config.tus_per_tbs > 0 && tu.serving_tbs != n / config.tus_per_tbs)
            issues.push_back("TU " + std::to_string(n) + " not grouped under its serving TBS");
        if (ground_distance(tu.position, topo.tbs_sites[tu.serving_tbs].position) > config.cell_radius_m + tol)
            issues.push_back("TU " + std::to_string(n) + " outside serving coverage radius");
    }
    for (std::size_t u = 0; u < topo.num_laas(); ++u) {
        const auto& p = topo.laas[u];
        if (!p.valid() || std::abs(p.altitude_m - config.laa_altitude_m) > tol) {
            issues.push_back("LAA " + std::to_string(u) + " invalid or at wrong altitude");
            continue;
        }
        const bool covered = std::any_of(topo.tbs_sites.begin(), topo.tbs_sites.end(), [&](const TbsSite& s) {
            return ground_distance(p, s.position) <= config.cell_radius_m + tol;
        });
        if (!covered)
            issues.push_back("LAA " + std::to_string(u) + " outside TBS coverage airspace");
    }
    return issues;
}

}  // namespace skyshare
