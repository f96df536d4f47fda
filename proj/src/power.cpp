#include "skyshare/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skyshare/errors.hpp"
#include "skyshare/units.hpp"

namespace skyshare {

LaaPowerResult laa_power_control(std::size_t u, std::span<const std::size_t> co_channel_tus, const PlannerCsi& csi,
                                 const PowerBounds& bounds, double gamma_th_dbm)
{
    const double gamma_mw = dbm_to_mw(gamma_th_dbm);
    double p = bounds.laa_max_dbw;
    double worst_gain = 0.0;
    for (std::size_t n : co_channel_tus) {
        p = std::min(p, dbm_to_dbw(gamma_th_dbm - csi.interference_db(u, n)));
        worst_gain = std::max(worst_gain, csi.interference(u, n));
    }
    // dB arithmetic can land a few ulps above the linear threshold; step at
    // unit scale so a bound of exactly 0 dBW does not crawl through subnormals
    while (p >= bounds.laa_min_dbw && dbw_to_mw(p) * worst_gain > gamma_mw)
        p -= std::max(std::abs(p), 1.0) * std::numeric_limits<double>::epsilon();

    LaaPowerResult r;
    if (p >= bounds.laa_min_dbw) {
        r.power_dbw = p;
        return r;
    }
    r.power_dbw = bounds.laa_min_dbw;
    const double p_mw = dbw_to_mw(r.power_dbw);
    for (std::size_t n : co_channel_tus)
        if (p_mw * csi.interference(u, n) > gamma_mw)
            r.violated_tus.push_back(n);
    std::sort(r.violated_tus.begin(), r.violated_tus.end());
    r.violated_tus.erase(std::unique(r.violated_tus.begin(), r.violated_tus.end()), r.violated_tus.end());
    return r;
}

std::vector<double> set_tbs_powers(const ScenarioConfig& config, std::size_t num_tus)
{
    const double p = config.tbs_power_dbm;
    if (!(p >= config.power.tbs_min_dbm && p <= config.power.tbs_max_dbm))
        throw ConfigError("TBS power " + std::to_string(p) + " dBm outside [" +
                          std::to_string(config.power.tbs_min_dbm) + ", " + std::to_string(config.power.tbs_max_dbm) +
                          "] dBm");
    return std::vector<double>(num_tus, p);
}

std::vector<double> refine_tbs_powers(std::vector<double> start, const TbsPowerObjective& objective,
                                      const std::vector<double>& grid, std::size_t max_sweeps)
{
    double best = objective(start);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool changed = false;
        for (std::size_t n = 0; n < start.size(); ++n) {
            const double current = start[n];
            double pick = current;
            for (double g : grid) {
                if (g == current)
                    continue;
                start[n] = g;
                const double value = objective(start);
                if (value > best || (value == best && g < pick)) {
                    best = value;
                    pick = g;
                }
            }
            start[n] = pick;
            changed = changed || pick != current;
        }
        if (!changed)
            break;
    }
    return start;
}

std::vector<ViolationPair> verify_interference(const SchedulePlan& plan, const PowerAllocation& powers,
                                               const PlannerCsi& csi, double gamma_th_dbm)
{
    const double gamma_mw = dbm_to_mw(gamma_th_dbm);
    std::vector<ViolationPair> out;
    for (const auto& [u, n] : plan.co_channel_pairs())
        if (dbw_to_mw(powers.p_laa_dbw[u]) * csi.interference(u, n) > gamma_mw)
            out.emplace_back(u, n);
    return out;
}

PowerAllocation control_laa_powers(const SchedulePlan& plan, const PlannerCsi& csi, const ScenarioConfig& config)
{
    PowerAllocation alloc;
    alloc.p_laa_dbw.assign(csi.num_laas, config.power.laa_min_dbw);
    const auto co_channel = plan.co_channel_tus(csi.num_laas);
    for (std::size_t u = 0; u < csi.num_laas; ++u) {
        if (plan.laa_carrier[u] == npos)
            continue;
        const LaaPowerResult r =
            laa_power_control(u, co_channel[u], csi, config.power, config.gamma_th_dbm());
        alloc.p_laa_dbw[u] = r.power_dbw;
        for (std::size_t n : r.violated_tus)
            alloc.violation_flags.emplace_back(u, n);
    }
    std::sort(alloc.violation_flags.begin(), alloc.violation_flags.end());
    return alloc;
}

}  // namespace skyshare
