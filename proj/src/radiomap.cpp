#include "skyshare/radiomap.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "skyshare/digest.hpp"
#include "skyshare/errors.hpp"
#include "skyshare/rng.hpp"
#include "skyshare/units.hpp"

static_assert(std::endian::native == std::endian::little, "radio map files are little-endian");

namespace skyshare {

namespace {

constexpr char kMagic[8] = {'S', 'K', 'Y', 'R', 'M', 'A', 'P', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr double kAltitudeTolerance = 1e-3;

double meters_per_degree() { return kEarthRadius * kDegToRad; }

void check_step(double grid_step_m)
{
    if (!(grid_step_m > 0) || !std::isfinite(grid_step_m))
        throw RadioMapError(RadioMapError::Kind::empty_region, "grid step must be positive");
}

}  // namespace

MapRegion MapRegion::from_bounds(double lat_min, double lat_max, double lon_min, double lon_max, double altitude_m,
                                 double grid_step_m)
{
    check_step(grid_step_m);
    if (!(lat_max > lat_min) || !(lon_max > lon_min))
        throw RadioMapError(RadioMapError::Kind::empty_region, "radio map region has no area");
    MapRegion r;
    r.grid_step_m = grid_step_m;
    r.lat_step_deg = grid_step_m / meters_per_degree();
    r.lon_step_deg = r.lat_step_deg / std::cos(0.5 * (lat_min + lat_max) * kDegToRad);
    // small slack so extents that are whole multiples of the step are not lost to rounding
    r.rows = static_cast<std::size_t>(std::floor((lat_max - lat_min) / r.lat_step_deg + 1e-9));
    r.cols = static_cast<std::size_t>(std::floor((lon_max - lon_min) / r.lon_step_deg + 1e-9));
    r.origin = {lat_min + 0.5 * r.lat_step_deg, lon_min + 0.5 * r.lon_step_deg, altitude_m};
    return r;
}

MapRegion MapRegion::single_node(const GeodeticPosition& position, double grid_step_m)
{
    check_step(grid_step_m);
    MapRegion r;
    r.grid_step_m = grid_step_m;
    r.lat_step_deg = grid_step_m / meters_per_degree();
    r.lon_step_deg = r.lat_step_deg / std::cos(position.latitude_deg * kDegToRad);
    r.rows = 1;
    r.cols = 1;
    r.origin = position;
    return r;
}

MapRegion MapRegion::covering(const Topology& topology, const ScenarioConfig& config, double grid_step_m)
{
    double lat_min = 90, lat_max = -90, lon_min = 180, lon_max = -180;
    for (const auto& s : topology.tbs_sites) {
        for (double bearing : {0.0, 90.0, 180.0, 270.0}) {
            const GeodeticPosition p = destination(s.position, bearing, config.cell_radius_m);
            lat_min = std::min(lat_min, p.latitude_deg);
            lat_max = std::max(lat_max, p.latitude_deg);
            lon_min = std::min(lon_min, p.longitude_deg);
            lon_max = std::max(lon_max, p.longitude_deg);
        }
    }
    // from_bounds drops the partial strip at the far edges; one step of
    // padding keeps every point of the cell union within reach of a node
    check_step(grid_step_m);
    const double dlat = grid_step_m / meters_per_degree();
    const double dlon = dlat / std::cos(0.5 * (lat_min + lat_max) * kDegToRad);
    return from_bounds(lat_min - dlat, lat_max + dlat, lon_min - dlon, lon_max + dlon, config.laa_altitude_m,
                       grid_step_m);
}

GeodeticPosition MapRegion::node(std::size_t index) const
{
    const std::size_t r = index / cols;
    const std::size_t c = index % cols;
    return {origin.latitude_deg + static_cast<double>(r) * lat_step_deg,
            origin.longitude_deg + static_cast<double>(c) * lon_step_deg, origin.altitude_m};
}

std::string channel_digest(const ScenarioConfig& c)
{
    Sha256 h;
    for (double v : {c.satellite_altitude_m, c.subsatellite_lat_deg, c.subsatellite_lon_deg, c.carrier_frequency_hz,
                     c.satellite_gain_dbi, c.tu_gain_dbi, c.laa_dish_diameter_m, c.laa_aperture_efficiency,
                     c.terrestrial_exponent, c.satellite_exponent, c.laa_altitude_m})
        h.update(v);
    return h.finish_hex();
}

std::string RadioMap::compute_digest() const
{
    Sha256 h;
    h.update(std::string_view("skyshare-radiomap"));
    h.update(static_cast<std::uint64_t>(kVersion));
    for (double v : {region.origin.latitude_deg, region.origin.longitude_deg, region.origin.altitude_m,
                     region.lat_step_deg, region.lon_step_deg, region.grid_step_m, metadata.frequency_hz,
                     metadata.satellite_exponent, metadata.terrestrial_exponent, metadata.reference_loss_db})
        h.update(v);
    h.update(static_cast<std::uint64_t>(region.rows));
    h.update(static_cast<std::uint64_t>(region.cols));
    h.update(static_cast<std::uint64_t>(num_tus));
    h.update(metadata.topology_seed);
    h.update(metadata.channel_digest);
    for (double e : entries)
        h.update(e);
    return h.finish_hex();
}

RadioMap build_radio_map(const Topology& topology, const ScenarioConfig& config, const MapRegion& region,
                         std::size_t node_budget, int threads)
{
    if (region.node_count() > node_budget)
        throw RadioMapError(RadioMapError::Kind::node_budget,
                            "radio map needs " + std::to_string(region.node_count()) + " nodes but the budget is " +
                                std::to_string(node_budget) + "; raise the budget to at least " +
                                std::to_string(region.node_count()) + " or coarsen the grid");
    RadioMap map;
    map.region = region;
    map.num_tus = topology.num_tus();
    map.entries.resize(region.node_count() * map.stride());
    const auto count = static_cast<long long>(region.node_count());
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads > 0 ? threads : 1)
    for (long long i = 0; i < count; ++i) {
        const auto node = static_cast<std::size_t>(i);
        const LaaLinkGains g = laa_link_gains_db(region.node(node), topology, config);
        double* row = map.entries.data() + node * map.stride();
        row[0] = g.to_satellite_db;
        std::copy(g.to_tus_db.begin(), g.to_tus_db.end(), row + 1);
    }

    map.metadata.frequency_hz = config.carrier_frequency_hz;
    map.metadata.satellite_exponent = config.satellite_exponent;
    map.metadata.terrestrial_exponent = config.terrestrial_exponent;
    map.metadata.reference_loss_db = PathLossModel::log_distance(config.carrier_frequency_hz, 2.0).reference_loss_db;
    map.metadata.topology_seed = topology.seed;
    map.metadata.channel_digest = channel_digest(config);
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    map.metadata.build_timestamp = stamp;
    map.metadata.content_digest = map.compute_digest();
    return map;
}

std::size_t nearest_node(const RadioMap& map, const GeodeticPosition& position)
{
    const MapRegion& r = map.region;
    if (std::abs(position.altitude_m - r.origin.altitude_m) > kAltitudeTolerance) {
        std::ostringstream os;
        os << "query altitude " << position.altitude_m << " m differs from the map altitude " << r.origin.altitude_m
           << " m";
        throw RadioMapError(RadioMapError::Kind::wrong_altitude, os.str());
    }
    const double x = (position.latitude_deg - r.origin.latitude_deg) / r.lat_step_deg;
    const double y = (position.longitude_deg - r.origin.longitude_deg) / r.lon_step_deg;
    // ceil(x - 0.5) rounds to nearest with exact midpoints going to the lower index
    const double row = std::ceil(x - 0.5);
    const double col = std::ceil(y - 0.5);
    if (r.node_count() == 0 || !(row >= 0) || !(col >= 0) || row >= static_cast<double>(r.rows) ||
        col >= static_cast<double>(r.cols))
        throw RadioMapError(RadioMapError::Kind::out_of_region, "query position lies outside the radio map region");
    return static_cast<std::size_t>(row) * r.cols + static_cast<std::size_t>(col);
}

MapLookup query(const RadioMap& map, const GeodeticPosition& position)
{
    MapLookup out;
    out.node = nearest_node(map, position);
    out.gain_to_satellite_db = map.satellite_db(out.node);
    out.gains_to_tus_db.assign(map.tus_db(out.node), map.tus_db(out.node) + map.num_tus);
    return out;
}

namespace {

class Writer {
public:
    template <class T>
    void put(const T& v)
    {
        const auto* p = reinterpret_cast<const char*>(&v);
        bytes.append(p, sizeof(T));
    }
    void put_string(const std::string& s)
    {
        put(static_cast<std::uint32_t>(s.size()));
        bytes.append(s);
    }
    std::string bytes;
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    template <class T>
    T get()
    {
        need(sizeof(T));
        T v;
        std::memcpy(&v, data_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::string get_string()
    {
        const auto n = get<std::uint32_t>();
        need(n);
        std::string s(data_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    std::string get_raw(std::size_t n)
    {
        need(n);
        std::string s(data_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const
    {
        if (data_.size() - pos_ < n)
            throw RadioMapError(RadioMapError::Kind::integrity, "radio map file is truncated");
    }
    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace

void save_radio_map(const RadioMap& map, const std::string& path)
{
    Writer w;
    w.bytes.append(kMagic, sizeof kMagic);
    w.put(kVersion);
    w.put(static_cast<std::uint64_t>(map.region.rows));
    w.put(static_cast<std::uint64_t>(map.region.cols));
    w.put(static_cast<std::uint64_t>(map.num_tus));
    for (double v : {map.region.origin.latitude_deg, map.region.origin.longitude_deg, map.region.origin.altitude_m,
                     map.region.lat_step_deg, map.region.lon_step_deg, map.region.grid_step_m,
                     map.metadata.frequency_hz, map.metadata.satellite_exponent, map.metadata.terrestrial_exponent,
                     map.metadata.reference_loss_db})
        w.put(v);
    w.put(map.metadata.topology_seed);
    w.put_string(map.metadata.channel_digest);
    w.put_string(map.metadata.build_timestamp);
    w.put_string(map.metadata.content_digest);
    w.bytes.append(reinterpret_cast<const char*>(map.entries.data()), map.entries.size() * sizeof(double));
    Sha256 h;
    h.update(w.bytes);
    w.bytes += h.finish_raw();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw RadioMapError(RadioMapError::Kind::io, "cannot open '" + path + "' for writing");
    out.write(w.bytes.data(), static_cast<std::streamsize>(w.bytes.size()));
    if (!out)
        throw RadioMapError(RadioMapError::Kind::io, "write to '" + path + "' failed");
}

RadioMap load_radio_map(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw RadioMapError(RadioMapError::Kind::io, "cannot open '" + path + "'");
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r(data);
    if (r.get_raw(sizeof kMagic) != std::string(kMagic, sizeof kMagic))
        throw RadioMapError(RadioMapError::Kind::integrity, "not a radio map file (bad magic)");
    const auto version = r.get<std::uint32_t>();
    if (version != kVersion)
        throw RadioMapError(RadioMapError::Kind::version, "radio map version " + std::to_string(version) +
                                                              " is not supported (expected " +
                                                              std::to_string(kVersion) + ")");
    if (data.size() < 32 + r.position())
        throw RadioMapError(RadioMapError::Kind::integrity, "radio map file is truncated");
    Sha256 h;
    h.update(std::string_view(data).substr(0, data.size() - 32));
    if (h.finish_raw() != data.substr(data.size() - 32))
        throw RadioMapError(RadioMapError::Kind::integrity, "radio map file digest mismatch (corrupted or truncated)");

    RadioMap map;
    map.region.rows = r.get<std::uint64_t>();
    map.region.cols = r.get<std::uint64_t>();
    map.num_tus = r.get<std::uint64_t>();
    map.region.origin.latitude_deg = r.get<double>();
    map.region.origin.longitude_deg = r.get<double>();
    map.region.origin.altitude_m = r.get<double>();
    map.region.lat_step_deg = r.get<double>();
    map.region.lon_step_deg = r.get<double>();
    map.region.grid_step_m = r.get<double>();
    map.metadata.frequency_hz = r.get<double>();
    map.metadata.satellite_exponent = r.get<double>();
    map.metadata.terrestrial_exponent = r.get<double>();
    map.metadata.reference_loss_db = r.get<double>();
    map.metadata.topology_seed = r.get<std::uint64_t>();
    map.metadata.channel_digest = r.get_string();
    map.metadata.build_timestamp = r.get_string();
    map.metadata.content_digest = r.get_string();
    const std::size_t count = map.region.rows * map.region.cols * (1 + map.num_tus);
    if (r.remaining() != count * sizeof(double) + 32)
        throw RadioMapError(RadioMapError::Kind::integrity, "radio map entry table has the wrong size");
    map.entries.resize(count);
    std::memcpy(map.entries.data(), data.data() + r.position(), count * sizeof(double));
    if (map.compute_digest() != map.metadata.content_digest)
        throw RadioMapError(RadioMapError::Kind::integrity, "radio map content digest mismatch");
    return map;
}

PlannerCsi csi_from_radio_map(const RadioMap& map, const Topology& topology, const ScenarioConfig& config)
{
    if (map.metadata.topology_seed != topology.seed || map.num_tus != topology.num_tus())
        throw RadioMapError(RadioMapError::Kind::mismatch, "radio map was built for a different topology");
    if (map.metadata.channel_digest != channel_digest(config))
        throw RadioMapError(RadioMapError::Kind::mismatch, "radio map was built with different channel parameters");

    Topology terrestrial_only = topology;
    terrestrial_only.laas.clear();
    PlannerCsi csi = build_planner_csi(terrestrial_only, config);
    csi.num_laas = topology.num_laas();
    csi.g_sat_db.resize(csi.num_laas);
    csi.g_int_db.resize(csi.num_laas * csi.num_tus);
    for (std::size_t u = 0; u < csi.num_laas; ++u) {
        const std::size_t node = nearest_node(map, topology.laas[u]);
        csi.g_sat_db[u] = map.satellite_db(node);
        std::copy(map.tus_db(node), map.tus_db(node) + map.num_tus, csi.g_int_db.begin() + u * csi.num_tus);
    }
    csi.refresh_linear();
    return csi;
}

MapVerification verify_radio_map(const RadioMap& map, const Topology& topology, const ScenarioConfig& config,
                                 std::size_t samples, std::uint64_t seed)
{
    MapVerification v;
    v.digest_ok = map.compute_digest() == map.metadata.content_digest;
    const std::size_t nodes = map.region.node_count();
    std::vector<std::size_t> picks;
    if (nodes <= samples) {
        for (std::size_t i = 0; i < nodes; ++i)
            picks.push_back(i);
    } else {
        Engine engine(derive_seed(seed, SeedStream::radiomap_verify));
        std::uniform_int_distribution<std::size_t> dist(0, nodes - 1);
        for (std::size_t i = 0; i < samples; ++i)
            picks.push_back(dist(engine));
    }
    for (std::size_t node : picks) {
        const LaaLinkGains g = laa_link_gains_db(map.region.node(node), topology, config);
        bool same = g.to_satellite_db == map.satellite_db(node) && g.to_tus_db.size() == map.num_tus &&
                    std::equal(g.to_tus_db.begin(), g.to_tus_db.end(), map.tus_db(node));
        ++v.checked;
        if (!same)
            v.mismatched_nodes.push_back(node);
    }
    return v;
}

}  // namespace skyshare
