#include "skyshare/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "skyshare/config.hpp"
#include "skyshare/units.hpp"

namespace skyshare {

// ---------------------------------------------------------------------------
// fading

std::string FadingModel::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case FadingKind::none:
        os << "none";
        break;
    case FadingKind::rayleigh:
        os << "rayleigh";
        break;
    case FadingKind::rician:
        os << "rician(K=" << k_db << " dB)";
        break;
    }
    if (shadowing_sigma_db > 0.0)
        os << " + lognormal(" << shadowing_sigma_db << " dB)";
    return os.str();
}

FadingSampler::FadingSampler(const FadingModel& model) : kind_(model.kind)
{
    if (kind_ == FadingKind::rician) {
        const double k = db_to_linear(model.k_db);
        los_amplitude_ = std::sqrt(k / (k + 1.0));
        diffuse_sigma_ = std::sqrt(1.0 / (2.0 * (k + 1.0)));
    }
    if (model.shadowing_sigma_db > 0.0) {
        shadow_sigma_ln_ = model.shadowing_sigma_db * std::numbers::ln10 / 10.0;
        shadow_norm_ = std::exp(-0.5 * shadow_sigma_ln_ * shadow_sigma_ln_);
    }
}

double FadingSampler::operator()(Engine& engine)
{
    double power = 1.0;
    switch (kind_) {
    case FadingKind::none:
        break;
    case FadingKind::rayleigh:
        power = exponential_(engine);
        break;
    case FadingKind::rician: {
        const double re = los_amplitude_ + diffuse_sigma_ * normal_(engine);
        const double im = diffuse_sigma_ * normal_(engine);
        power = re * re + im * im;
        break;
    }
    }
    if (shadow_sigma_ln_ > 0.0)
        power *= shadow_norm_ * std::exp(shadow_sigma_ln_ * normal_(engine));
    return power;
}

std::vector<double> sample_fading(const FadingModel& model, std::size_t count, std::uint64_t seed)
{
    Engine engine(seed);
    FadingSampler sampler(model);
    std::vector<double> out(count);
    for (auto& x : out)
        x = sampler(engine);
    return out;
}

// ---------------------------------------------------------------------------
// antennas and path loss

AntennaPattern AntennaPattern::flat(AntennaKind kind, double gain_dbi) { return {kind, gain_dbi, 0.0, 0.0}; }

AntennaPattern AntennaPattern::parabolic_s465(double diameter_m, double frequency_hz, double efficiency)
{
    return {AntennaKind::laa_parabolic_s465, parabolic_peak_gain_dbi(diameter_m, frequency_hz, efficiency),
            diameter_m, frequency_hz};
}

double AntennaPattern::min_angle_deg() const
{
    const double lambda = kSpeedOfLight / frequency_hz;
    return std::max(1.0, 100.0 * lambda / diameter_m);
}

double parabolic_peak_gain_dbi(double diameter_m, double frequency_hz, double efficiency)
{
    const double lambda = kSpeedOfLight / frequency_hz;
    const double x = std::numbers::pi * diameter_m / lambda;
    return linear_to_db(efficiency * x * x);
}

double antenna_gain(const AntennaPattern& pattern, double off_axis_deg)
{
    if (pattern.kind != AntennaKind::laa_parabolic_s465)
        return pattern.peak_gain_dbi;
    const double theta = std::clamp(off_axis_deg, 0.0, 180.0);
    if (theta < pattern.min_angle_deg())
        return pattern.peak_gain_dbi;
    if (theta < 48.0)
        return std::min(pattern.peak_gain_dbi, 32.0 - 25.0 * std::log10(theta));
    return std::min(pattern.peak_gain_dbi, -10.0);
}

PathLossModel PathLossModel::free_space(double frequency_hz) { return log_distance(frequency_hz, 2.0); }

PathLossModel PathLossModel::log_distance(double frequency_hz, double exponent)
{
    const double lambda = kSpeedOfLight / frequency_hz;
    const double pl0 = 20.0 * std::log10(4.0 * std::numbers::pi * 1.0 / lambda);
    return {exponent, pl0, 1.0, frequency_hz};
}

double path_loss(const PathLossModel& model, double distance_m)
{
    const double d = std::max(distance_m, model.reference_distance_m);
    return model.reference_loss_db + 10.0 * model.exponent * std::log10(d / model.reference_distance_m);
}

// ---------------------------------------------------------------------------
// rates

double expected_rate(double signal_gain, double tx_power_dbm, std::span<const Interferer> interferers,
                     const FadingModel& signal_fading, double noise_dbm, std::size_t n_mc, std::uint64_t seed)
{
    if (n_mc == 0)
        return 0.0;
    Engine engine(seed);
    FadingSampler signal_sampler(signal_fading);
    std::vector<FadingSampler> samplers;
    std::vector<double> mean_power;
    samplers.reserve(interferers.size());
    for (const auto& i : interferers) {
        samplers.emplace_back(i.fading);
        mean_power.push_back(dbm_to_mw(i.power_dbm) * i.gain);
    }
    const double signal = dbm_to_mw(tx_power_dbm) * signal_gain;
    const double noise = dbm_to_mw(noise_dbm);

    double acc = 0.0;
    for (std::size_t k = 0; k < n_mc; ++k) {
        const double s = signal * signal_sampler(engine);
        double denom = noise;
        for (std::size_t i = 0; i < samplers.size(); ++i)
            denom += mean_power[i] * samplers[i](engine);
        acc += std::log2(1.0 + s / denom);
    }
    return acc / static_cast<double>(n_mc);
}

double rayleigh_rate_closed_form(double mean_snr_db)
{
    const double snr = db_to_linear(mean_snr_db);
    if (snr <= 0.0)
        return 0.0;
    const double x = 1.0 / snr;
    double scaled_e1;  // e^x E1(x)
    if (x > 500.0) {
        // asymptotic series; exp(x) would overflow
        scaled_e1 = (1.0 - 1.0 / x + 2.0 / (x * x) - 6.0 / (x * x * x)) / x;
    } else {
        // libstdc++ expint(-x) = Ei(-x) = -E1(x)
        scaled_e1 = std::exp(x) * -std::expint(-x);
    }
    return scaled_e1 / std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// planner CSI

LaaLinkGains laa_link_gains_db(const GeodeticPosition& laa, const Topology& topology, const ScenarioConfig& config)
{
    const AntennaPattern dish =
        AntennaPattern::parabolic_s465(config.laa_dish_diameter_m, config.carrier_frequency_hz,
                                       config.laa_aperture_efficiency);
    const PathLossModel sat_model =
        PathLossModel::log_distance(config.carrier_frequency_hz, config.satellite_exponent);
    const PathLossModel ter_model =
        PathLossModel::log_distance(config.carrier_frequency_hz, config.terrestrial_exponent);

    const CartesianPosition from = geodetic_to_cartesian(laa);
    const CartesianPosition sat = geodetic_to_cartesian(topology.satellite);

    LaaLinkGains gains;
    gains.to_satellite_db = antenna_gain(dish, 0.0) + config.satellite_gain_dbi -
                            path_loss(sat_model, (sat - from).norm());
    gains.to_tus_db.reserve(topology.num_tus());
    for (const auto& tu : topology.tus) {
        const CartesianPosition target = geodetic_to_cartesian(tu.position);
        const double theta = off_axis_angle(from, sat, target);
        gains.to_tus_db.push_back(antenna_gain(dish, theta) + config.tu_gain_dbi -
                                  path_loss(ter_model, (target - from).norm()));
    }
    return gains;
}

double tbs_link_gain_db(const TbsSite& tbs, const TerrestrialUser& tu, const ScenarioConfig& config)
{
    const PathLossModel ter_model =
        PathLossModel::log_distance(config.carrier_frequency_hz, config.terrestrial_exponent);
    return config.tbs_gain_dbi + config.tu_gain_dbi - path_loss(ter_model, slant_range(tbs.position, tu.position));
}

void PlannerCsi::refresh_linear()
{
    auto convert = [](const std::vector<double>& db) {
        std::vector<double> lin(db.size());
        std::transform(db.begin(), db.end(), lin.begin(), db_to_linear);
        return lin;
    };
    g_sat = convert(g_sat_db);
    g_ter = convert(g_ter_db);
    g_int = convert(g_int_db);
    g_cross = convert(g_cross_db);
}

PlannerCsi build_planner_csi(const Topology& topology, const ScenarioConfig& config)
{
    PlannerCsi csi;
    csi.num_laas = topology.num_laas();
    csi.num_tus = topology.num_tus();
    csi.num_tbs = topology.num_tbs();
    csi.noise_power_dbm = config.noise_power_dbm;
    csi.scenario_seed = topology.seed;

    csi.g_sat_db.resize(csi.num_laas);
    csi.g_int_db.resize(csi.num_laas * csi.num_tus);
    for (std::size_t u = 0; u < csi.num_laas; ++u) {
        LaaLinkGains g = laa_link_gains_db(topology.laas[u], topology, config);
        csi.g_sat_db[u] = g.to_satellite_db;
        std::copy(g.to_tus_db.begin(), g.to_tus_db.end(), csi.g_int_db.begin() + u * csi.num_tus);
    }

    csi.g_ter_db.resize(csi.num_tus);
    csi.g_cross_db.resize(csi.num_tbs * csi.num_tus);
    csi.serving_tbs.resize(csi.num_tus);
    for (std::size_t n = 0; n < csi.num_tus; ++n) {
        const auto& tu = topology.tus[n];
        csi.serving_tbs[n] = tu.serving_tbs;
        for (std::size_t m = 0; m < csi.num_tbs; ++m) {
            const double g = tbs_link_gain_db(topology.tbs_sites[m], tu, config);
            csi.g_cross_db[m * csi.num_tus + n] = g;
            if (m == tu.serving_tbs)
                csi.g_ter_db[n] = g;
        }
    }
    csi.tbs_color.reserve(csi.num_tbs);
    for (const auto& s : topology.tbs_sites)
        csi.tbs_color.push_back(s.reuse_color);

    csi.refresh_linear();
    return csi;
}

}  // namespace skyshare
