#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "skyshare/channel.hpp"
#include "skyshare/config.hpp"
#include "skyshare/scheduling.hpp"

namespace skyshare {

using ViolationPair = std::pair<std::size_t, std::size_t>;  // (LAA u, TU n)

struct PowerAllocation {
    std::vector<double> p_laa_dbw;              // [u]
    std::vector<double> p_tbs_dbm;              // [n], power of the serving TBS toward TU n
    std::vector<ViolationPair> violation_flags; // sorted, unique
};

struct LaaPowerResult {
    double power_dbw = 0.0;
    std::vector<std::size_t> violated_tus;  // non-empty only when even the minimum power violates

    bool flagged() const { return !violated_tus.empty(); }
};

/// Largest LAA power within bounds that keeps p * g_int[u][n] <= gamma_th
/// (linear, planner CSI) for every listed TU. Falls back to the minimum power
/// and flags the TUs it still violates.
LaaPowerResult laa_power_control(std::size_t u, std::span<const std::size_t> co_channel_tus, const PlannerCsi& csi,
                                 const PowerBounds& bounds, double gamma_th_dbm);

/// Uniform per-TU TBS power from the config; throws ConfigError when outside
/// the TBS power bounds.
std::vector<double> set_tbs_powers(const ScenarioConfig& config, std::size_t num_tus);

/// Coordinate ascent over a discrete power grid: sweep TUs in index order,
/// move each to its best grid value (ties keep the lower value), repeat until
/// a sweep changes nothing.
using TbsPowerObjective = std::function<double(const std::vector<double>& p_tbs_dbm)>;
std::vector<double> refine_tbs_powers(std::vector<double> start, const TbsPowerObjective& objective,
                                      const std::vector<double>& grid = {0, 2, 4, 6, 8, 10},
                                      std::size_t max_sweeps = 50);

/// Every co-channel pair of `plan` whose planner-CSI interference exceeds gamma_th.
std::vector<ViolationPair> verify_interference(const SchedulePlan& plan, const PowerAllocation& powers,
                                               const PlannerCsi& csi, double gamma_th_dbm);

/// Runs laa_power_control for every scheduled LAA against its co-channel TUs
/// in `plan`; idle LAAs stay at the minimum power.
PowerAllocation control_laa_powers(const SchedulePlan& plan, const PlannerCsi& csi, const ScenarioConfig& config);

}  // namespace skyshare
