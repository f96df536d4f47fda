#include "skyshare/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "skyshare/errors.hpp"
#include "skyshare/hungarian.hpp"
#include "skyshare/rng.hpp"

namespace skyshare {

std::vector<std::size_t> LinkClusterSet::labels() const
{
    std::size_t total = 0;
    for (const auto& c : clusters)
        total += c.size();
    std::vector<std::size_t> out(total, npos);
    for (std::size_t k = 0; k < clusters.size(); ++k)
        for (std::size_t u : clusters[k])
            out[u] = k;
    return out;
}

std::vector<double> median_centroid(const std::vector<FeatureVector>& features,
                                    const std::vector<std::size_t>& members)
{
    if (members.empty())
        return {};
    const std::size_t dim = features[members.front()].values.size();
    std::vector<double> centroid(dim);
    std::vector<double> column(members.size());
    const std::size_t half = members.size() / 2;
    for (std::size_t d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < members.size(); ++i)
            column[i] = features[members[i]].values[d];
        std::sort(column.begin(), column.end());
        centroid[d] = members.size() % 2 ? column[half] : 0.5 * (column[half - 1] + column[half]);
    }
    return centroid;
}

double cluster_dispersion(const LinkClusterSet& set, const std::vector<FeatureVector>& features)
{
    double total = 0.0;
    for (const auto& members : set.clusters) {
        const std::vector<double> c = median_centroid(features, members);
        for (std::size_t u : members)
            total += l1_distance(features[u].values, c);
    }
    return total;
}

namespace {

void check_inputs(const std::vector<FeatureVector>& features, const std::vector<std::size_t>& quotas)
{
    if (quotas.empty())
        throw ClusteringError("balanced_kmeans: no clusters requested");
    if (features.size() < quotas.size())
        throw ClusteringError("balanced_kmeans: fewer points (" + std::to_string(features.size()) +
                              ") than clusters (" + std::to_string(quotas.size()) + ")");
    for (std::size_t q : quotas)
        if (q == 0)
            throw ClusteringError("balanced_kmeans: quotas must be positive");
    if (std::accumulate(quotas.begin(), quotas.end(), std::size_t{0}) != features.size())
        throw ClusteringError("balanced_kmeans: quotas must sum to the number of points");
    for (const auto& f : features)
        if (f.values.size() != features.front().values.size())
            throw ClusteringError("balanced_kmeans: feature vectors differ in length");
}

std::vector<std::vector<double>> farthest_point_seeds(const std::vector<FeatureVector>& features, std::size_t k,
                                                      std::uint64_t seed)
{
    const std::size_t U = features.size();
    Engine engine(derive_seed(seed, SeedStream::clustering));
    std::uniform_int_distribution<std::size_t> pick(0, U - 1);
    std::vector<std::size_t> chosen{pick(engine)};
    std::vector<double> nearest(U);
    for (std::size_t u = 0; u < U; ++u)
        nearest[u] = l1_distance(features[u].values, features[chosen[0]].values);
    while (chosen.size() < k) {
        std::size_t best = 0;
        for (std::size_t u = 1; u < U; ++u)
            if (nearest[u] > nearest[best])
                best = u;
        chosen.push_back(best);
        for (std::size_t u = 0; u < U; ++u)
            nearest[u] = std::min(nearest[u], l1_distance(features[u].values, features[best].values));
    }
    std::vector<std::vector<double>> centroids;
    for (std::size_t c : chosen)
        centroids.push_back(features[c].values);
    return centroids;
}

// Exact quota-constrained assignment followed by two cost-neutral passes:
// swaps that put lower points in lower clusters, then swaps that reunite
// identical points. Neither pass changes the assignment cost.
std::vector<std::size_t> assign_points(const std::vector<FeatureVector>& features,
                                       const std::vector<std::vector<double>>& centroids,
                                       const std::vector<std::size_t>& quotas)
{
    const std::size_t U = features.size();
    const std::size_t K = centroids.size();
    std::vector<double> dist(U * K);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t k = 0; k < K; ++k)
            dist[u * K + k] = l1_distance(features[u].values, centroids[k]);

    std::vector<std::size_t> slot_cluster;
    for (std::size_t k = 0; k < K; ++k)
        slot_cluster.insert(slot_cluster.end(), quotas[k], k);
    std::vector<double> cost(U * U);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < U; ++s)
            cost[u * U + s] = dist[u * K + slot_cluster[s]];
    const Assignment a = hungarian(cost, U, U);

    std::vector<std::size_t> label(U);
    for (std::size_t u = 0; u < U; ++u)
        label[u] = slot_cluster[a.row_to_col[u]];
    auto d = [&](std::size_t u, std::size_t k) { return dist[u * K + k]; };

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t w = u + 1; w < U; ++w) {
                const std::size_t lu = label[u], lw = label[w];
                if (lu > lw && d(u, lw) + d(w, lu) == d(u, lu) + d(w, lw)) {
                    std::swap(label[u], label[w]);
                    changed = true;
                }
            }
    }

    // bounded: moving one group can split another
    std::size_t budget = U * U;
    for (bool changed = true; changed && budget > 0; --budget) {
        changed = false;
        for (std::size_t u = 0; u < U && !changed; ++u)
            for (std::size_t v = u + 1; v < U && !changed; ++v) {
                if (label[u] == label[v] || features[u].values != features[v].values)
                    continue;
                // u and v are identical but split: try pulling v into u's cluster.
                const std::size_t a_k = label[u], b_k = label[v];
                for (std::size_t w = 0; w < U; ++w) {
                    if (label[w] != a_k || features[w].values == features[u].values)
                        continue;
                    if (d(v, a_k) + d(w, b_k) == d(v, b_k) + d(w, a_k)) {
                        std::swap(label[v], label[w]);
                        changed = true;
                        break;
                    }
                }
            }
    }
    return label;
}

std::vector<std::vector<std::size_t>> members_of(const std::vector<std::size_t>& label, std::size_t K)
{
    std::vector<std::vector<std::size_t>> clusters(K);
    for (std::size_t u = 0; u < label.size(); ++u)
        clusters[label[u]].push_back(u);
    return clusters;
}

}  // namespace

LinkClusterSet balanced_kmeans(const std::vector<FeatureVector>& features, const std::vector<std::size_t>& quotas,
                               std::uint64_t seed, std::size_t max_iters)
{
    check_inputs(features, quotas);
    const std::size_t K = quotas.size();

    LinkClusterSet set;
    set.quotas = quotas;
    set.seed = seed;
    std::vector<std::vector<double>> centroids = farthest_point_seeds(features, K, seed);
    std::vector<std::size_t> label;

    for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iters, 1); ++iter) {
        std::vector<std::size_t> next = assign_points(features, centroids, quotas);
        if (next == label)
            break;
        LinkClusterSet trial;
        trial.clusters = members_of(next, K);
        const double objective = cluster_dispersion(trial, features);
        // Guards the trace against rounding in the cost-neutral passes.
        if (!set.objective_trace.empty() && objective > set.objective_trace.back())
            break;
        label = std::move(next);
        set.clusters = std::move(trial.clusters);
        set.objective_trace.push_back(objective);
        for (std::size_t k = 0; k < K; ++k)
            centroids[k] = median_centroid(features, set.clusters[k]);
    }
    set.objective = set.objective_trace.back();
    return set;
}

LinkClusterSet balanced_kmeans_best(const std::vector<FeatureVector>& features,
                                    const std::vector<std::size_t>& quotas, std::uint64_t seed,
                                    std::size_t max_iters, std::size_t restarts)
{
    LinkClusterSet best;
    bool have = false;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        const std::uint64_t s = r == 0 ? seed : derive_seed(seed, {r});
        LinkClusterSet run = balanced_kmeans(features, quotas, s, max_iters);
        if (!have || run.objective < best.objective || (run.objective == best.objective && s < best.seed)) {
            best = std::move(run);
            have = true;
        }
    }
    return best;
}

LinkClusterSet hierarchical_cluster(const std::vector<FeatureVector>& features, int reuse_factor,
                                    std::size_t num_carriers, const std::vector<std::size_t>& quotas,
                                    std::uint64_t seed, std::size_t max_iters, std::size_t restarts)
{
    if (reuse_factor < 1 || num_carriers % static_cast<std::size_t>(reuse_factor) != 0)
        throw ClusteringError("hierarchical_cluster: F = " + std::to_string(reuse_factor) +
                              " does not divide K = " + std::to_string(num_carriers));
    if (quotas.size() != num_carriers)
        throw ClusteringError("hierarchical_cluster: need one quota per carrier");
    const auto F = static_cast<std::size_t>(reuse_factor);
    if (F == 1) {
        LinkClusterSet flat = balanced_kmeans_best(features, quotas, seed, max_iters, restarts);
        flat.coarse_labels.assign(num_carriers, 0);
        return flat;
    }

    const std::size_t block = num_carriers / F;
    std::vector<std::size_t> coarse_quotas(F, 0);
    for (std::size_t k = 0; k < num_carriers; ++k)
        coarse_quotas[k / block] += quotas[k];
    const LinkClusterSet coarse = balanced_kmeans_best(features, coarse_quotas, seed, max_iters, restarts);

    LinkClusterSet out;
    out.quotas = quotas;
    out.seed = seed;
    out.objective_trace = coarse.objective_trace;
    for (std::size_t f = 0; f < F; ++f) {
        const std::vector<std::size_t>& members = coarse.clusters[f];
        std::vector<FeatureVector> subset;
        subset.reserve(members.size());
        for (std::size_t u : members)
            subset.push_back(features[u]);
        const std::vector<std::size_t> sub_quotas(quotas.begin() + f * block, quotas.begin() + (f + 1) * block);
        const LinkClusterSet fine =
            balanced_kmeans_best(subset, sub_quotas, derive_seed(seed, {f}), max_iters, restarts);
        for (const auto& c : fine.clusters) {
            std::vector<std::size_t> mapped;
            for (std::size_t i : c)
                mapped.push_back(members[i]);
            std::sort(mapped.begin(), mapped.end());
            out.clusters.push_back(std::move(mapped));
            out.coarse_labels.push_back(static_cast<int>(f));
        }
    }
    out.objective = cluster_dispersion(out, features);
    return out;
}

}  // namespace skyshare
