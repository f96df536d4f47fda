#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skyshare/channel.hpp"
#include "skyshare/clustering.hpp"
#include "skyshare/config.hpp"
#include "skyshare/geometry.hpp"
#include "skyshare/power.hpp"
#include "skyshare/radiomap.hpp"
#include "skyshare/scheduling.hpp"

namespace skyshare {

enum class Scheme { proposed, finesync, randscheme, nosharing };

const char* scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& name);
std::vector<Scheme> all_schemes();

struct RunOptions {
    int parallelism = 1;
    const RadioMap* radiomap = nullptr;  // lookup mode for planner LAA gains
};

/// Seed of topology t under a master seed.
std::uint64_t topology_seed(std::uint64_t master_seed, std::size_t index);

/// Everything shared by the schemes on one topology.
struct Scenario {
    ScenarioConfig config;
    Topology topology;
    PlannerCsi csi;    // what the planner sees (direct or radio-map lookup)
    PlannerCsi truth;  // large-scale gains of the ground-truth channel
};

Scenario make_scenario(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options = {});

struct StageTimings {
    double features_s = 0.0;
    double clustering_s = 0.0;
    double scheduling_s = 0.0;
    double power_s = 0.0;
    double evaluation_s = 0.0;
};

struct RealizedRates {
    double satellite_bps = 0.0;
    double terrestrial_bps = 0.0;
    std::vector<double> laa_bps;  // [u]
    std::vector<double> tu_bps;   // [n]

    double total_bps() const { return satellite_bps + terrestrial_bps; }
};

struct SchemeResult {
    Scheme scheme = Scheme::proposed;
    SchedulePlan plan;
    PowerAllocation powers;
    RealizedRates rates;
    std::vector<ViolationPair> violations;  // verify_interference on the final plan
    std::optional<LinkClusterSet> clusters;
    StageTimings timings;
};

/// Realized rates under fresh fading drawn from `seed` (shared across schemes
/// for paired comparisons). `truth` holds the ground-truth large-scale gains.
RealizedRates realized_sum_rate(const PlannerCsi& truth, const SchedulePlan& plan, const PowerAllocation& powers,
                                const ScenarioConfig& config, std::uint64_t seed, int threads = 1);
RealizedRates realized_sum_rate(const Topology& topology, const SchedulePlan& plan, const PowerAllocation& powers,
                                const ScenarioConfig& config, std::uint64_t seed);

/// Planner-side objective used by optional TBS power refinement: sum over
/// TUs of the time-weighted log2(1 + mean SINR).
double planner_mean_sinr_sum(const SchedulePlan& plan, const PowerAllocation& powers, const PlannerCsi& csi,
                             const ScenarioConfig& config, const std::vector<double>& p_tbs_dbm);

/// FineSync re-pairing of an already scheduled plan; exposed for tests.
/// `pair_rate(n, u)` is the planner rate of TU n under LAA u.
SchedulePlan fine_sync_plan(const SchedulePlan& coarse, const std::function<double(std::size_t, std::size_t)>& pair_rate);

SchemeResult run_proposed(const Scenario& scenario, const RunOptions& options = {});
SchemeResult run_finesync(const Scenario& scenario, const RunOptions& options = {});
SchemeResult run_randscheme(const Scenario& scenario, const RunOptions& options = {});
SchemeResult run_nosharing(const Scenario& scenario, const RunOptions& options = {});
SchemeResult run_scheme(Scheme scheme, const Scenario& scenario, const RunOptions& options = {});

SchemeResult run_proposed(const ScenarioConfig& config, std::uint64_t seed);
SchemeResult run_finesync(const ScenarioConfig& config, std::uint64_t seed);
SchemeResult run_randscheme(const ScenarioConfig& config, std::uint64_t seed);
SchemeResult run_nosharing(const ScenarioConfig& config, std::uint64_t seed);

struct SchemeOutcome {
    Scheme scheme = Scheme::proposed;
    double satellite_bps = 0.0;
    double terrestrial_bps = 0.0;
    double total_bps = 0.0;
    double improvement_pct = 0.0;
    std::size_t flagged_pairs = 0;     // pairs the scheme itself flagged
    std::size_t violating_pairs = 0;   // verify_interference count
    std::size_t unflagged_violations = 0;
    double mean_laa_power_dbw = 0.0;
    std::string plan_digest;
    StageTimings timings;
};

struct TopologyOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string layout_digest;
    bool ok = true;
    std::string error;
    std::vector<SchemeOutcome> schemes;  // same order as the report's scheme list
};

struct Statistic {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
};

struct SchemeAggregate {
    Scheme scheme = Scheme::proposed;
    std::size_t count = 0;
    Statistic satellite_bps, terrestrial_bps, total_bps, improvement_pct, violating_pairs;
};

struct SimulationReport {
    std::string config_digest;
    std::uint64_t master_seed = 0;
    std::vector<Scheme> schemes;
    std::vector<TopologyOutcome> topologies;
    std::vector<SchemeAggregate> aggregates;
    std::size_t succeeded = 0;
    std::size_t failed = 0;

    const SchemeAggregate* aggregate(Scheme s) const;
};

/// Runs every scheme on each topology and aggregates. The no-sharing
/// baseline is always evaluated for the improvement metric. Per-topology
/// failures are recorded and excluded from the aggregates.
SimulationReport replicate(const ScenarioConfig& config, const std::vector<Scheme>& schemes,
                           std::size_t n_topologies, std::uint64_t master_seed, const RunOptions& options = {});

/// Same, over an explicit list of topology seeds.
SimulationReport replicate_seeds(const ScenarioConfig& config, const std::vector<Scheme>& schemes,
                                 const std::vector<std::uint64_t>& seeds, std::uint64_t master_seed,
                                 const RunOptions& options = {});

enum class SweepParameter { tbs_power, interval, reuse_factor };

const char* sweep_parameter_name(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(const std::string& name);

/// Config for one sweep value; throws ConfigError when the value is invalid.
ScenarioConfig apply_sweep_value(const ScenarioConfig& config, SweepParameter parameter, double value);

struct SweepRow {
    double value = 0.0;
    SimulationReport report;
};

/// One replicate per value on shared topology seeds. All values are checked
/// before any run starts.
std::vector<SweepRow> sweep(const ScenarioConfig& config, SweepParameter parameter, const std::vector<double>& values,
                            const std::vector<Scheme>& schemes, const RunOptions& options = {});

}  // namespace skyshare
