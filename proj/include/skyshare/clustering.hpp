#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skyshare/features.hpp"

namespace skyshare {

/// K clusters of LAA indices with their sizes. Under hierarchical clustering
/// each cluster also carries the coarse subset it came from.
struct LinkClusterSet {
    std::vector<std::vector<std::size_t>> clusters;  // sorted member indices
    std::vector<std::size_t> quotas;
    double objective = 0.0;                          // total L1 dispersion around medians
    std::vector<int> coarse_labels;                  // per cluster; empty for flat clustering
    std::vector<double> objective_trace;             // per iteration, non-increasing
    std::uint64_t seed = 0;

    /// Cluster index of every point.
    std::vector<std::size_t> labels() const;
};

/// Quota-constrained k-medians under L1: farthest-point seeding, exact
/// balanced assignment through the Hungarian solver, per-coordinate median
/// centroids. Throws ClusteringError on inconsistent quotas.
LinkClusterSet balanced_kmeans(const std::vector<FeatureVector>& features, const std::vector<std::size_t>& quotas,
                               std::uint64_t seed, std::size_t max_iters);

/// Best of `restarts` runs: lowest objective, then lowest seed. Run r > 0
/// uses derive_seed(seed, {r}).
LinkClusterSet balanced_kmeans_best(const std::vector<FeatureVector>& features,
                                    const std::vector<std::size_t>& quotas, std::uint64_t seed,
                                    std::size_t max_iters, std::size_t restarts);

/// Two-stage clustering for partial reuse: F coarse clusters sized by the
/// carrier blocks' quota sums, then K/F fine clusters inside each. Cluster
/// f * K/F + j is fine cluster j of coarse cluster f. F = 1 is plain
/// balanced_kmeans with the same seed.
LinkClusterSet hierarchical_cluster(const std::vector<FeatureVector>& features, int reuse_factor,
                                    std::size_t num_carriers, const std::vector<std::size_t>& quotas,
                                    std::uint64_t seed, std::size_t max_iters, std::size_t restarts = 1);

/// Sum over clusters of L1 distances to the cluster's coordinate-wise median.
double cluster_dispersion(const LinkClusterSet& set, const std::vector<FeatureVector>& features);

/// Coordinate-wise median (midpoint of the two middle values for even counts).
std::vector<double> median_centroid(const std::vector<FeatureVector>& features,
                                    const std::vector<std::size_t>& members);

}  // namespace skyshare
