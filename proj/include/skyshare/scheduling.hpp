#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skyshare/channel.hpp"
#include "skyshare/clustering.hpp"
#include "skyshare/config.hpp"
#include "skyshare/hungarian.hpp"

namespace skyshare {

enum class LinkSide { satellite, terrestrial };

struct TimeSlice {
    std::size_t link_id = 0;
    double start = 0.0;
    double end = 0.0;

    double duration() const { return end - start; }
};

/// TDMA slices of one side of one carrier. Slices tile [0, interval_s):
/// each end equals the next start bit-exactly and the last end is interval_s.
struct TimeSliceLayout {
    std::size_t carrier = 0;
    LinkSide side = LinkSide::satellite;
    double interval_s = 0.0;
    std::vector<TimeSlice> slices;

    bool empty() const { return slices.empty(); }
    bool tiles() const;
};

/// Slices in ascending link id with durations proportional to `weights`
/// (paired with `link_ids`; empty weights mean equal shares).
TimeSliceLayout build_time_slices(std::vector<std::size_t> link_ids, double interval_s,
                                  std::vector<double> weights = {}, std::size_t carrier = 0,
                                  LinkSide side = LinkSide::satellite);

/// O[i][j] = overlap in seconds of satellite slice i and terrestrial slice j.
struct OverlapMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    double row_sum(std::size_t i) const;
    double col_sum(std::size_t j) const;
    double total() const;
};

/// Throws SchedulingError when the layouts cover different intervals.
OverlapMatrix overlap_matrix(const TimeSliceLayout& sat, const TimeSliceLayout& ter);

enum class SyncMode {
    coarse,  // only interval boundaries align; every co-carrier pair can collide
    fine,    // slot boundaries align; only time-overlapping pairs collide
};

struct SchedulePlan {
    std::size_t num_carriers = 0;
    std::size_t num_tbs = 0;
    double interval_s = 0.0;
    SyncMode sync = SyncMode::coarse;

    std::vector<std::size_t> cluster_carrier;        // satellite cluster id -> carrier
    std::vector<std::size_t> laa_carrier;            // [u], npos when the satellite side is idle
    std::vector<std::size_t> tu_carrier;             // [n]
    std::vector<TimeSliceLayout> satellite;          // [k]
    std::vector<TimeSliceLayout> terrestrial;        // [k * M + m]
    std::vector<OverlapMatrix> overlaps;             // [k * M + m]

    const TimeSliceLayout& terrestrial_layout(std::size_t k, std::size_t m) const
    {
        return terrestrial[k * num_tbs + m];
    }
    const OverlapMatrix& overlap(std::size_t k, std::size_t m) const { return overlaps[k * num_tbs + m]; }

    /// LAA-TU pairs that can interfere: same carrier under coarse sync, and
    /// additionally positive time overlap under fine sync. Sorted, unique.
    std::vector<std::pair<std::size_t, std::size_t>> co_channel_pairs() const;

    /// TUs sharing carrier k with LAA u (per co_channel_pairs semantics).
    std::vector<std::vector<std::size_t>> co_channel_tus(std::size_t num_laas) const;

    /// Canonical text digest of assignments and slice boundaries.
    std::string digest() const;
};

/// Builds satellite layouts from carrier-mapped clusters, terrestrial layouts
/// from TU carriers (round robin by TU id), and every overlap matrix.
SchedulePlan assemble_plan(const std::vector<std::vector<std::size_t>>& carrier_laas,
                           const std::vector<std::size_t>& tu_carrier, const PlannerCsi& csi,
                           const ScenarioConfig& config);

/// Recomputes overlap matrices after layouts change.
void refresh_overlaps(SchedulePlan& plan);

/// Structural invariants: partitions, allowed carriers, tiling, conservation.
std::vector<std::string> check_plan(const SchedulePlan& plan, const PlannerCsi& csi, const ScenarioConfig& config,
                                    bool satellite_idle = false);

/// Cluster -> carrier bijection. Under partial reuse clusters with coarse
/// label f go to the contiguous block f; lowest cluster id takes the lowest
/// free carrier of its block.
std::vector<std::size_t> assign_satellite_clusters(const LinkClusterSet& clusters, std::size_t num_carriers,
                                                   int reuse_factor);

/// Per-carrier TU quotas for a TBS: V spread over `allowed`, earlier carriers
/// taking the remainder.
std::vector<std::size_t> tu_quotas(std::size_t tus_per_tbs, std::size_t allowed);

/// Planner rate of TU n while LAA u (npos: none) transmits at `laa_power_dbw`.
using TuRateFn = std::function<double(std::size_t n, std::size_t u, double laa_power_dbw)>;

struct TuAssignment {
    std::vector<std::size_t> tu_carrier;     // [n]
    std::vector<std::size_t> infeasible_tus; // placed on their least-violating carrier
};

/// Per-TBS quota-constrained assignment maximising time-weighted planner
/// rate. Carriers where some co-channel LAA breaks gamma_th at `laa_power_dbw`
/// are only used when no feasible carrier remains for the TU.
TuAssignment assign_tbs_tu_links(const PlannerCsi& csi, const ScenarioConfig& config,
                                 const std::vector<TimeSliceLayout>& satellite_layouts,
                                 const std::vector<double>& laa_power_dbw, const TuRateFn& rate);

/// Same problem for one TBS; exposed for tests.
std::vector<std::size_t> assign_one_tbs(const std::vector<std::vector<double>>& utility,
                                        const std::vector<std::vector<double>>& violation_db,
                                        const std::vector<std::size_t>& carriers,
                                        const std::vector<std::size_t>& quotas);

}  // namespace skyshare
