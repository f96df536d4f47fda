#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skyshare/rng.hpp"

namespace skyshare {

enum class FadingKind {
    none,      // deterministic |h|^2 = 1
    rayleigh,  // |h|^2 ~ Exp(1)
    rician,    // LoS + diffuse, Rice factor k_db
};

/// Small-scale fading with optional log-normal shadowing. Every variant is
/// normalised to E[|h|^2] = 1.
struct FadingModel {
    FadingKind kind = FadingKind::rayleigh;
    double k_db = 10.0;              // rician only
    double shadowing_sigma_db = 0.0; // 0 disables shadowing

    static FadingModel rayleigh() { return {FadingKind::rayleigh, 0.0, 0.0}; }
    static FadingModel rician(double k_db) { return {FadingKind::rician, k_db, 0.0}; }
    static FadingModel deterministic() { return {FadingKind::none, 0.0, 0.0}; }

    std::string describe() const;
    friend bool operator==(const FadingModel&, const FadingModel&) = default;
};

/// Draws power gains for one FadingModel. Cheap to copy; holds no engine.
class FadingSampler {
public:
    explicit FadingSampler(const FadingModel& model);

    double operator()(Engine& engine);

private:
    FadingKind kind_;
    double los_amplitude_ = 0.0;
    double diffuse_sigma_ = 0.0;
    double shadow_sigma_ln_ = 0.0;
    double shadow_norm_ = 1.0;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

std::vector<double> sample_fading(const FadingModel& model, std::size_t count, std::uint64_t seed);

}  // namespace skyshare
