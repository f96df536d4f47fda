#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skyshare/fading.hpp"
#include "skyshare/geometry.hpp"

namespace skyshare {

struct ScenarioConfig;

enum class AntennaKind { satellite_flat, tbs_flat, tu_isotropic, laa_parabolic_s465 };

struct AntennaPattern {
    AntennaKind kind = AntennaKind::tu_isotropic;
    double peak_gain_dbi = 0.0;
    double diameter_m = 0.0;    // parabolic only
    double frequency_hz = 2e9;  // parabolic only

    static AntennaPattern flat(AntennaKind kind, double gain_dbi);
    static AntennaPattern parabolic_s465(double diameter_m, double frequency_hz, double efficiency = 0.65);

    /// Start of the S.465 side-lobe envelope: max(1 deg, 100 lambda / D).
    double min_angle_deg() const;
};

/// Boresight gain of a uniformly illuminated dish: 10 log10(eta (pi D / lambda)^2).
double parabolic_peak_gain_dbi(double diameter_m, double frequency_hz, double efficiency);

/// Gain in dBi at `off_axis_deg` (clamped to [0, 180]). Flat kinds ignore the angle.
/// The parabolic kind follows the S.465 reference envelope:
///   peak                  for theta < theta_min
///   32 - 25 log10(theta)  for theta_min <= theta < 48
///   -10                   for 48 <= theta <= 180
double antenna_gain(const AntennaPattern& pattern, double off_axis_deg);

/// PL(d) = PL0 + 10 alpha log10(d / d0), with d clamped to d0 from below.
struct PathLossModel {
    double exponent = 2.0;
    double reference_loss_db = 0.0;
    double reference_distance_m = 1.0;
    double frequency_hz = 2e9;

    static PathLossModel free_space(double frequency_hz);
    /// Log-distance model anchored at the free-space loss at 1 m.
    static PathLossModel log_distance(double frequency_hz, double exponent);
};

double path_loss(const PathLossModel& model, double distance_m);

struct Interferer {
    double gain = 0.0;        // linear
    double power_dbm = 0.0;
    FadingModel fading = FadingModel::rayleigh();
};

/// Monte Carlo ergodic rate in bit/s/Hz:
///   (1/n_mc) sum log2(1 + S|h_s|^2 / (noise + sum_i I_i |h_i|^2))
/// Draw order per sample is signal, then interferers in sequence order.
double expected_rate(double signal_gain, double tx_power_dbm, std::span<const Interferer> interferers,
                     const FadingModel& signal_fading, double noise_dbm, std::size_t n_mc, std::uint64_t seed);

/// Closed-form ergodic rate of an interference-free Rayleigh link:
/// e^(1/g) E1(1/g) / ln 2 with g the linear mean SNR.
double rayleigh_rate_closed_form(double mean_snr_db);

/// Large-scale gains (path loss plus antenna gains) of one LAA position
/// toward the satellite and toward every TU of a topology, in dB.
struct LaaLinkGains {
    double to_satellite_db = 0.0;
    std::vector<double> to_tus_db;
};

LaaLinkGains laa_link_gains_db(const GeodeticPosition& laa, const Topology& topology, const ScenarioConfig& config);

/// The planner's channel knowledge: path loss plus antenna gains only.
struct PlannerCsi {
    std::size_t num_laas = 0;
    std::size_t num_tus = 0;
    std::size_t num_tbs = 0;
    double noise_power_dbm = -114.0;
    std::uint64_t scenario_seed = 0;  // topology seed; roots the planner's Monte Carlo streams

    std::vector<double> g_sat_db;    // [u]
    std::vector<double> g_ter_db;    // [n]
    std::vector<double> g_int_db;    // [u * N + n]
    std::vector<double> g_cross_db;  // [m * N + n], defined for every m
    std::vector<double> g_sat;       // linear mirrors of the dB tables
    std::vector<double> g_ter;
    std::vector<double> g_int;
    std::vector<double> g_cross;

    std::vector<std::size_t> serving_tbs;  // [n]
    std::vector<int> tbs_color;            // [m]

    double sat(std::size_t u) const { return g_sat[u]; }
    double ter(std::size_t n) const { return g_ter[n]; }
    double interference(std::size_t u, std::size_t n) const { return g_int[u * num_tus + n]; }
    double interference_db(std::size_t u, std::size_t n) const { return g_int_db[u * num_tus + n]; }
    double cross(std::size_t m, std::size_t n) const { return g_cross[m * num_tus + n]; }

    /// Recomputes the linear tables from the dB tables.
    void refresh_linear();
};

/// Direct computation of planner CSI from geometry.
PlannerCsi build_planner_csi(const Topology& topology, const ScenarioConfig& config);

/// Gains of TBS m toward TU n (serving or not), dB.
double tbs_link_gain_db(const TbsSite& tbs, const TerrestrialUser& tu, const ScenarioConfig& config);

}  // namespace skyshare
