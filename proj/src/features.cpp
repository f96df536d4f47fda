#include "skyshare/features.hpp"

#include <cmath>

#include "skyshare/errors.hpp"
#include "skyshare/hungarian.hpp"
#include "skyshare/units.hpp"

namespace skyshare {

double l1_distance(std::span<const double> a, std::span<const double> b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += std::abs(a[i] - b[i]);
    return d;
}

double feature_distance(const FeatureVector& a, const FeatureVector& b)
{
    if (a.values.size() != b.values.size())
        throw FeatureError("feature_distance: length mismatch (" + std::to_string(a.values.size()) + " vs " +
                           std::to_string(b.values.size()) + ")");
    return l1_distance(a.values, b.values);
}

std::vector<std::size_t> planner_cross_tbs(std::size_t n, const PlannerCsi& csi, const ScenarioConfig& config)
{
    std::vector<std::size_t> out;
    if (!config.cross_tbs_interference)
        return out;
    const std::size_t serving = csi.serving_tbs[n];
    const bool partial = config.reuse_factor() > 1;
    for (std::size_t m = 0; m < csi.num_tbs; ++m) {
        if (m == serving)
            continue;
        if (partial && csi.tbs_color[m] != csi.tbs_color[serving])
            continue;
        out.push_back(m);
    }
    return out;
}

TuFadingBank planner_bank(std::size_t n, const PlannerCsi& csi, const ScenarioConfig& config)
{
    const double p_mw = dbm_to_mw(config.tbs_power_dbm);
    BankSpec spec;
    spec.signal_mw = p_mw * csi.ter(n);
    spec.noise_mw = dbm_to_mw(csi.noise_power_dbm);
    for (std::size_t m : planner_cross_tbs(n, csi, config))
        spec.cross_mw.push_back(p_mw * csi.cross(m, n));
    spec.signal_fading = config.terrestrial_fading;
    spec.cross_fading = config.cross_fading;
    spec.n_mc = config.feature_mc_samples;
    spec.seed = bank_seed(csi.scenario_seed, SeedStream::features, n);
    return make_bank(spec);
}

PlannerRates::PlannerRates(const PlannerCsi& csi, const ScenarioConfig& config, int threads)
    : csi_(&csi), config_(&config), banks_(csi.num_tus)
{
    const auto N = static_cast<long long>(csi.num_tus);
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1)
    for (long long n = 0; n < N; ++n)
        banks_[static_cast<std::size_t>(n)] = planner_bank(static_cast<std::size_t>(n), csi, config);
}

double PlannerRates::rate(std::size_t n, std::size_t u, double laa_power_dbw) const
{
    if (u == npos)
        return banks_[n].free_rate;
    const double level = dbw_to_mw(laa_power_dbw) * csi_->interference(u, n);
    double r = 0.0;
    banked_rates(banks_[n], config_->interference_fading, pair_seed(csi_->scenario_seed, SeedStream::features, n, u),
                 std::span<const double>(&level, 1), std::span<double>(&r, 1));
    return r;
}

double degraded_rate(std::size_t n, std::size_t u, double laa_power_dbw, const PlannerCsi& csi,
                     const ScenarioConfig& config)
{
    const TuFadingBank bank = planner_bank(n, csi, config);
    const double level = dbw_to_mw(laa_power_dbw) * csi.interference(u, n);
    double r = 0.0;
    banked_rates(bank, config.interference_fading, pair_seed(csi.scenario_seed, SeedStream::features, n, u),
                 std::span<const double>(&level, 1), std::span<double>(&r, 1));
    return r;
}

bool exceeds_threshold(std::size_t n, std::size_t u, double laa_power_dbw, const PlannerCsi& csi,
                       const ScenarioConfig& config)
{
    return dbw_to_mw(laa_power_dbw) * csi.interference(u, n) > dbm_to_mw(config.gamma_th_dbm());
}

namespace {

FeatureVector assemble(std::size_t u, const double* at_max, const double* at_min, const PlannerCsi& csi,
                       const ScenarioConfig& config)
{
    FeatureVector f;
    f.laa_index = u;
    f.values.resize(2 * csi.num_tus);
    const double p_max = config.power.laa_max_dbw;
    const double p_min = config.power.laa_min_dbw;
    for (std::size_t n = 0; n < csi.num_tus; ++n) {
        double hi = at_max[n];
        double lo = at_min[n];
        if (config.qos_penalty) {
            if (exceeds_threshold(n, u, p_max, csi, config))
                hi = 0.0;
            if (exceeds_threshold(n, u, p_min, csi, config))
                lo = 0.0;
        }
        f.values[2 * n] = hi;
        f.values[2 * n + 1] = lo;
    }
    return f;
}

}  // namespace

FeatureVector build_feature_vector(std::size_t u, const PlannerCsi& csi, const ScenarioConfig& config)
{
    if (u >= csi.num_laas)
        throw FeatureError("build_feature_vector: LAA index out of range");
    const double levels_dbw[2] = {config.power.laa_max_dbw, config.power.laa_min_dbw};
    std::vector<double> at_max(csi.num_tus), at_min(csi.num_tus);
    for (std::size_t n = 0; n < csi.num_tus; ++n) {
        const TuFadingBank bank = planner_bank(n, csi, config);
        const double g = csi.interference(u, n);
        const double levels[2] = {dbw_to_mw(levels_dbw[0]) * g, dbw_to_mw(levels_dbw[1]) * g};
        double out[2];
        banked_rates(bank, config.interference_fading, pair_seed(csi.scenario_seed, SeedStream::features, n, u),
                     levels, out);
        at_max[n] = out[0];
        at_min[n] = out[1];
    }
    return assemble(u, at_max.data(), at_min.data(), csi, config);
}

FeatureSet build_feature_set(const PlannerRates& rates, bool parallel, int threads)
{
    const PlannerCsi& csi = rates.csi();
    const ScenarioConfig& config = rates.config();
    RateTableJob job;
    job.banks = &rates.banks();
    job.g_int = csi.g_int;
    job.num_laas = csi.num_laas;
    job.num_tus = csi.num_tus;
    job.powers_mw = {dbw_to_mw(config.power.laa_max_dbw), dbw_to_mw(config.power.laa_min_dbw)};
    job.fading = config.interference_fading;
    job.seed_base = csi.scenario_seed;
    job.stream = SeedStream::features;
    const std::vector<double> table = parallel ? rate_table_parallel(job, threads) : rate_table_serial(job);

    FeatureSet set;
    const std::size_t N = csi.num_tus;
    set.rate_at_max.resize(csi.num_laas * N);
    set.rate_at_min.resize(csi.num_laas * N);
    for (std::size_t i = 0; i < csi.num_laas * N; ++i) {
        set.rate_at_max[i] = table[2 * i];
        set.rate_at_min[i] = table[2 * i + 1];
    }
    set.vectors.reserve(csi.num_laas);
    for (std::size_t u = 0; u < csi.num_laas; ++u)
        set.vectors.push_back(assemble(u, set.rate_at_max.data() + u * N, set.rate_at_min.data() + u * N, csi, config));
    return set;
}

}  // namespace skyshare
