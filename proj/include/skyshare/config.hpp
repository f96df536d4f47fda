#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skyshare/fading.hpp"
#include "skyshare/geometry.hpp"

namespace skyshare {

enum class ReuseMode { full, partial };

struct PowerBounds {
    double laa_min_dbw = -3.0;
    double laa_max_dbw = 2.0;
    double tbs_min_dbm = 0.0;
    double tbs_max_dbm = 10.0;
};

/// Everything that defines one scenario. Defaults are the case-study values.
struct ScenarioConfig {
    // geometry
    double satellite_altitude_m = 500e3;
    double subsatellite_lat_deg = 40.0;
    double subsatellite_lon_deg = 100.0;
    double center_lat_deg = 40.0;
    double center_lon_deg = 116.0;
    std::size_t num_tbs = 28;      // M
    std::size_t tus_per_tbs = 24;  // V
    std::size_t num_laas = 96;     // U
    double laa_altitude_m = 200.0; // H
    double cell_radius_m = 1000.0;

    // radio
    double carrier_frequency_hz = 2e9;
    std::size_t num_carriers = 12;  // K
    double bandwidth_hz = 1e6;      // B
    double noise_power_dbm = -114.0;
    double gamma_th_offset_db = -12.2;
    double interval_s = 10.0;       // T

    // antennas
    double satellite_gain_dbi = 25.0;
    double tbs_gain_dbi = 15.0;
    double tu_gain_dbi = 0.0;
    double laa_dish_diameter_m = 0.5;
    double laa_aperture_efficiency = 0.65;

    // propagation
    double terrestrial_exponent = 3.5;
    double satellite_exponent = 2.0;
    bool cross_tbs_interference = true;

    // small-scale fading (ground truth only; the planner never sees it)
    FadingModel satellite_fading = FadingModel::rician(10.0);
    FadingModel terrestrial_fading = FadingModel::rayleigh();
    FadingModel interference_fading = FadingModel::rayleigh();
    FadingModel cross_fading = FadingModel::rayleigh();

    // power
    PowerBounds power;
    double tbs_power_dbm = 10.0;
    bool refine_tbs_power = false;

    // frequency reuse among TBSs
    ReuseMode reuse = ReuseMode::full;
    int partial_reuse_factor = 4;  // F
    std::vector<std::size_t> laa_quotas;  // empty: equal U/K

    // simulation
    std::size_t feature_mc_samples = 200;
    std::size_t eval_mc_samples = 1000;
    std::size_t num_topologies = 10;
    std::uint64_t master_seed = 1;
    std::size_t kmeans_max_iters = 50;
    std::size_t kmeans_restarts = 1;
    bool qos_penalty = true;

    std::size_t num_tus() const noexcept { return num_tbs * tus_per_tbs; }  // N
    int reuse_factor() const noexcept { return reuse == ReuseMode::partial ? partial_reuse_factor : 1; }
    double gamma_th_dbm() const noexcept { return noise_power_dbm + gamma_th_offset_db; }
    GeodeticPosition subsatellite_point() const { return {subsatellite_lat_deg, subsatellite_lon_deg, 0.0}; }
    GeodeticPosition region_center() const { return {center_lat_deg, center_lon_deg, 0.0}; }

    /// Cluster sizes per carrier: explicit quotas or U/K each.
    std::vector<std::size_t> resolved_quotas() const;

    /// Carriers a TBS of the given reuse color may use (contiguous block of K/F).
    std::vector<std::size_t> allowed_carriers(int reuse_color) const;

    /// Canonical JSON text of every field (sorted keys); basis of digest().
    std::string canonical_json() const;
    std::string digest() const;
};

struct Diagnostic {
    enum class Severity { error, info };
    Severity severity = Severity::error;
    std::string path;  // dotted field path, e.g. "radio.num_carriers"
    std::string message;
    int line = 0;      // 1-based source line, 0 when unknown

    std::string format() const;
};

struct ConfigParseResult {
    ScenarioConfig config;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept;
};

/// Parses the YAML scenario document. Missing fields keep their defaults
/// (reported as info diagnostics); unknown keys and malformed values are
/// errors. Throws ConfigError only when the text is not YAML at all.
ConfigParseResult parse_config(const std::string& text);
ConfigParseResult load_config(const std::string& path);

/// Constraint checks across fields (bounds, divisibility, reuse tiling).
std::vector<Diagnostic> validate_config(const ScenarioConfig& config);

/// Full YAML emission of a config; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

/// Mismatches between `config` and the published case-study constants.
std::vector<std::string> case_study_deviations(const ScenarioConfig& config);

}  // namespace skyshare
