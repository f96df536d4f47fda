#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "skyshare/channel.hpp"
#include "skyshare/config.hpp"
#include "skyshare/geometry.hpp"

namespace skyshare {

/// Regular lat/lon grid of nodes at a fixed altitude. Node (r, c) sits at
/// origin + (r * lat_step, c * lon_step); nodes are numbered row-major.
struct MapRegion {
    GeodeticPosition origin;  // node (0, 0); its altitude is the map altitude
    double lat_step_deg = 0.0;
    double lon_step_deg = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    double grid_step_m = 0.0;

    /// Cell-centred nodes covering [lat_min, lat_max] x [lon_min, lon_max]:
    /// floor(extent / step) nodes per axis, so a region smaller than one step
    /// holds no nodes. Throws RadioMapError(empty_region) for non-positive
    /// extents or step.
    static MapRegion from_bounds(double lat_min, double lat_max, double lon_min, double lon_max, double altitude_m,
                                 double grid_step_m);
    /// One node exactly at `position`.
    static MapRegion single_node(const GeodeticPosition& position, double grid_step_m);
    /// Bounds of the topology's LAA airspace (all TBS cells, grown by the cell radius).
    static MapRegion covering(const Topology& topology, const ScenarioConfig& config, double grid_step_m);

    std::size_t node_count() const { return rows * cols; }
    GeodeticPosition node(std::size_t index) const;
};

struct RadioMapMetadata {
    double frequency_hz = 0.0;
    double satellite_exponent = 0.0;
    double terrestrial_exponent = 0.0;
    double reference_loss_db = 0.0;
    std::uint64_t topology_seed = 0;
    std::string channel_digest;   // see channel_digest()
    std::string build_timestamp;  // excluded from the content digest
    std::string content_digest;   // hex SHA-256 over region, metadata and entries
};

/// Per-node large-scale gains: to the satellite, then to every TU (dB).
struct RadioMap {
    MapRegion region;
    std::size_t num_tus = 0;
    std::vector<double> entries;  // [node * (1 + num_tus) + 0] satellite, [.. + 1 + n] TU n
    RadioMapMetadata metadata;

    std::size_t stride() const { return 1 + num_tus; }
    double satellite_db(std::size_t node) const { return entries[node * stride()]; }
    const double* tus_db(std::size_t node) const { return entries.data() + node * stride() + 1; }

    std::string compute_digest() const;
};

/// Digest of every config field the stored gains depend on.
std::string channel_digest(const ScenarioConfig& config);

inline constexpr std::size_t kDefaultNodeBudget = 50'000;

/// Throws RadioMapError(node_budget) naming the required budget when the
/// grid is larger than `node_budget`.
RadioMap build_radio_map(const Topology& topology, const ScenarioConfig& config, const MapRegion& region,
                         std::size_t node_budget = kDefaultNodeBudget, int threads = 1);

struct MapLookup {
    std::size_t node = 0;
    double gain_to_satellite_db = 0.0;
    std::vector<double> gains_to_tus_db;
};

/// Nearest node (ties toward the lower index). Throws RadioMapError with
/// kind out_of_region or wrong_altitude.
std::size_t nearest_node(const RadioMap& map, const GeodeticPosition& position);
MapLookup query(const RadioMap& map, const GeodeticPosition& position);

void save_radio_map(const RadioMap& map, const std::string& path);
RadioMap load_radio_map(const std::string& path);

/// Planner CSI with the LAA rows (satellite and LAA-to-TU gains) looked up
/// in the map. Throws RadioMapError(mismatch) when the map was built for a
/// different topology or channel configuration.
PlannerCsi csi_from_radio_map(const RadioMap& map, const Topology& topology, const ScenarioConfig& config);

struct MapVerification {
    std::size_t checked = 0;
    std::vector<std::size_t> mismatched_nodes;
    bool digest_ok = false;

    bool ok() const { return digest_ok && mismatched_nodes.empty(); }
};

/// Re-derives `samples` random nodes (all nodes when fewer) and compares exactly.
MapVerification verify_radio_map(const RadioMap& map, const Topology& topology, const ScenarioConfig& config,
                                 std::size_t samples = 100, std::uint64_t seed = 1);

}  // namespace skyshare
