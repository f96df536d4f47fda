#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skyshare/channel.hpp"
#include "skyshare/config.hpp"
#include "skyshare/kernels.hpp"

namespace skyshare {

/// Interference-impact sketch of one LAA-satellite link. Entry 2n is the
/// expected rate of TBS-TU link n with the LAA at its maximum power, entry
/// 2n+1 the same at its minimum power.
struct FeatureVector {
    std::size_t laa_index = 0;
    std::vector<double> values;
};

double l1_distance(std::span<const double> a, std::span<const double> b);

/// L1 distance; throws FeatureError on length mismatch.
double feature_distance(const FeatureVector& a, const FeatureVector& b);

/// Cross-TBS interferers the planner assumes for TU n: every other TBS under
/// full reuse, same-colour TBSs under partial reuse, none when disabled.
std::vector<std::size_t> planner_cross_tbs(std::size_t n, const PlannerCsi& csi, const ScenarioConfig& config);

/// Planner-side fading bank of TU n (seeded from the scenario seed and n).
TuFadingBank planner_bank(std::size_t n, const PlannerCsi& csi, const ScenarioConfig& config);

/// Planner expected rates with one LAA interfering. Holds a bank per TU;
/// keeps references to `csi` and `config`, which must outlive it.
class PlannerRates {
public:
    PlannerRates(const PlannerCsi& csi, const ScenarioConfig& config, int threads = 1);

    /// Expected rate of TU n with LAA u at `laa_power_dbw`; u == npos means no LAA.
    double rate(std::size_t n, std::size_t u, double laa_power_dbw) const;
    double interference_free(std::size_t n) const { return banks_[n].free_rate; }

    const std::vector<TuFadingBank>& banks() const { return banks_; }
    const PlannerCsi& csi() const { return *csi_; }
    const ScenarioConfig& config() const { return *config_; }

private:
    const PlannerCsi* csi_;
    const ScenarioConfig* config_;
    std::vector<TuFadingBank> banks_;
};

/// Expected rate of TBS-TU link n degraded by LAA u at `laa_power_dbw`
/// (no QoS penalty applied).
double degraded_rate(std::size_t n, std::size_t u, double laa_power_dbw, const PlannerCsi& csi,
                     const ScenarioConfig& config);

/// True when LAA u at `laa_power_dbw` exceeds gamma_th at TU n under planner CSI.
bool exceeds_threshold(std::size_t n, std::size_t u, double laa_power_dbw, const PlannerCsi& csi,
                       const ScenarioConfig& config);

FeatureVector build_feature_vector(std::size_t u, const PlannerCsi& csi, const ScenarioConfig& config);

/// All feature vectors plus the unpenalised rate tables behind them.
struct FeatureSet {
    std::vector<FeatureVector> vectors;  // [u]
    std::vector<double> rate_at_max;     // [u * N + n]
    std::vector<double> rate_at_min;     // [u * N + n]
};

FeatureSet build_feature_set(const PlannerRates& rates, bool parallel = true, int threads = 1);

}  // namespace skyshare
