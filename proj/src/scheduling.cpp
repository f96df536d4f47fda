#include "skyshare/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "skyshare/digest.hpp"
#include "skyshare/errors.hpp"
#include "skyshare/units.hpp"

namespace skyshare {

bool TimeSliceLayout::tiles() const
{
    if (slices.empty())
        return true;
    if (slices.front().start != 0.0 || slices.back().end != interval_s)
        return false;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        if (!(slices[i].end >= slices[i].start))
            return false;
        if (i + 1 < slices.size() && slices[i].end != slices[i + 1].start)
            return false;
    }
    return true;
}

TimeSliceLayout build_time_slices(std::vector<std::size_t> link_ids, double interval_s, std::vector<double> weights,
                                  std::size_t carrier, LinkSide side)
{
    if (!(interval_s > 0))
        throw SchedulingError("build_time_slices: interval must be positive");
    if (weights.empty())
        weights.assign(link_ids.size(), 1.0);
    if (weights.size() != link_ids.size())
        throw SchedulingError("build_time_slices: one weight per link required");

    TimeSliceLayout layout;
    layout.carrier = carrier;
    layout.side = side;
    layout.interval_s = interval_s;
    if (link_ids.empty())
        return layout;

    std::vector<std::size_t> order(link_ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return link_ids[a] < link_ids[b]; });
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0) || !std::isfinite(w))
            throw SchedulingError("build_time_slices: weights must be positive and finite");
        total += w;
    }

    double cumulative = 0.0;
    double start = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        cumulative += weights[order[i]];
        const double end = i + 1 == order.size() ? interval_s : interval_s * (cumulative / total);
        layout.slices.push_back({link_ids[order[i]], start, end});
        start = end;
    }
    return layout;
}

double OverlapMatrix::row_sum(std::size_t i) const
{
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
        s += at(i, j);
    return s;
}

double OverlapMatrix::col_sum(std::size_t j) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        s += at(i, j);
    return s;
}

double OverlapMatrix::total() const { return std::accumulate(data.begin(), data.end(), 0.0); }

OverlapMatrix overlap_matrix(const TimeSliceLayout& sat, const TimeSliceLayout& ter)
{
    if (!sat.empty() && !ter.empty() && sat.interval_s != ter.interval_s)
        throw SchedulingError("overlap_matrix: layouts cover different intervals");
    OverlapMatrix o;
    o.rows = sat.slices.size();
    o.cols = ter.slices.size();
    o.data.assign(o.rows * o.cols, 0.0);
    for (std::size_t i = 0; i < o.rows; ++i) {
        const TimeSlice& a = sat.slices[i];
        for (std::size_t j = 0; j < o.cols; ++j) {
            const TimeSlice& b = ter.slices[j];
            const double lo = std::max(a.start, b.start);
            const double hi = std::min(a.end, b.end);
            if (hi > lo)
                o.data[i * o.cols + j] = hi - lo;
        }
    }
    return o;
}

std::vector<std::pair<std::size_t, std::size_t>> SchedulePlan::co_channel_pairs() const
{
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < num_carriers; ++k) {
        const TimeSliceLayout& sat = satellite[k];
        for (std::size_t m = 0; m < num_tbs; ++m) {
            const TimeSliceLayout& ter = terrestrial_layout(k, m);
            const OverlapMatrix& o = overlap(k, m);
            for (std::size_t i = 0; i < sat.slices.size(); ++i)
                for (std::size_t j = 0; j < ter.slices.size(); ++j)
                    if (sync == SyncMode::coarse || o.at(i, j) > 0.0)
                        pairs.emplace(sat.slices[i].link_id, ter.slices[j].link_id);
        }
    }
    return {pairs.begin(), pairs.end()};
}

std::vector<std::vector<std::size_t>> SchedulePlan::co_channel_tus(std::size_t num_laas) const
{
    std::vector<std::vector<std::size_t>> out(num_laas);
    for (const auto& [u, n] : co_channel_pairs())
        out[u].push_back(n);
    return out;
}

std::string SchedulePlan::digest() const
{
    std::ostringstream os;
    os << std::hexfloat << "K " << num_carriers << " M " << num_tbs << " T " << interval_s << " sync "
       << (sync == SyncMode::coarse ? "coarse" : "fine") << "\n";
    auto put = [&os](const char* tag, const std::vector<std::size_t>& v) {
        os << tag;
        for (std::size_t x : v)
            os << ' ' << (x == npos ? std::string("-") : std::to_string(x));
        os << '\n';
    };
    put("clusters", cluster_carrier);
    put("laa", laa_carrier);
    put("tu", tu_carrier);
    auto layout = [&os](const TimeSliceLayout& l) {
        for (const auto& s : l.slices)
            os << ' ' << s.link_id << '@' << s.start << '+' << s.end;
        os << '\n';
    };
    for (const auto& l : satellite)
        layout(l);
    for (const auto& l : terrestrial)
        layout(l);
    return sha256_hex(os.str());
}

void refresh_overlaps(SchedulePlan& plan)
{
    plan.overlaps.resize(plan.num_carriers * plan.num_tbs);
    for (std::size_t k = 0; k < plan.num_carriers; ++k)
        for (std::size_t m = 0; m < plan.num_tbs; ++m)
            plan.overlaps[k * plan.num_tbs + m] = overlap_matrix(plan.satellite[k], plan.terrestrial[k * plan.num_tbs + m]);
}

SchedulePlan assemble_plan(const std::vector<std::vector<std::size_t>>& carrier_laas,
                           const std::vector<std::size_t>& tu_carrier, const PlannerCsi& csi,
                           const ScenarioConfig& config)
{
    SchedulePlan plan;
    plan.num_carriers = config.num_carriers;
    plan.num_tbs = csi.num_tbs;
    plan.interval_s = config.interval_s;
    plan.laa_carrier.assign(csi.num_laas, npos);
    plan.tu_carrier = tu_carrier;

    for (std::size_t k = 0; k < plan.num_carriers; ++k) {
        const std::vector<std::size_t> laas = k < carrier_laas.size() ? carrier_laas[k] : std::vector<std::size_t>{};
        for (std::size_t u : laas)
            plan.laa_carrier[u] = k;
        plan.satellite.push_back(build_time_slices(laas, config.interval_s, {}, k, LinkSide::satellite));
    }

    std::vector<std::vector<std::size_t>> groups(plan.num_carriers * plan.num_tbs);
    for (std::size_t n = 0; n < tu_carrier.size(); ++n)
        if (tu_carrier[n] != npos)
            groups[tu_carrier[n] * plan.num_tbs + csi.serving_tbs[n]].push_back(n);
    for (std::size_t k = 0; k < plan.num_carriers; ++k)
        for (std::size_t m = 0; m < plan.num_tbs; ++m)
            plan.terrestrial.push_back(build_time_slices(groups[k * plan.num_tbs + m], config.interval_s, {}, k,
                                                         LinkSide::terrestrial));
    refresh_overlaps(plan);
    return plan;
}

std::vector<std::string> check_plan(const SchedulePlan& plan, const PlannerCsi& csi, const ScenarioConfig& config,
                                    bool satellite_idle)
{
    std::vector<std::string> issues;
    auto fail = [&issues](std::string s) { issues.push_back(std::move(s)); };
    const std::size_t K = plan.num_carriers, M = plan.num_tbs;
    if (plan.satellite.size() != K || plan.terrestrial.size() != K * M || plan.overlaps.size() != K * M) {
        fail("layout table sizes do not match K and M");
        return issues;
    }
    if (plan.laa_carrier.size() != csi.num_laas || plan.tu_carrier.size() != csi.num_tus) {
        fail("assignment vectors do not match U and N");
        return issues;
    }

    std::vector<std::size_t> laa_seen(csi.num_laas, 0), laa_where(csi.num_laas, npos);
    for (std::size_t k = 0; k < K; ++k)
        for (const auto& s : plan.satellite[k].slices) {
            if (s.link_id >= csi.num_laas) {
                fail("satellite slice references unknown LAA " + std::to_string(s.link_id));
                continue;
            }
            ++laa_seen[s.link_id];
            laa_where[s.link_id] = k;
        }
    for (std::size_t u = 0; u < csi.num_laas; ++u) {
        if (satellite_idle) {
            if (laa_seen[u] != 0 || plan.laa_carrier[u] != npos)
                fail("LAA " + std::to_string(u) + " scheduled although the satellite side is idle");
        } else if (laa_seen[u] != 1 || laa_where[u] != plan.laa_carrier[u]) {
            fail("LAA " + std::to_string(u) + " is not scheduled exactly once on its carrier");
        }
    }

    std::vector<std::size_t> tu_layouts(csi.num_tus, 0), tu_where(csi.num_tus, npos);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < M; ++m) {
            std::set<std::size_t> here;
            for (const auto& s : plan.terrestrial_layout(k, m).slices) {
                if (s.link_id >= csi.num_tus || csi.serving_tbs[s.link_id] != m) {
                    fail("terrestrial slice on TBS " + std::to_string(m) + " references a foreign TU");
                    continue;
                }
                here.insert(s.link_id);
            }
            for (std::size_t n : here) {
                ++tu_layouts[n];
                tu_where[n] = k;
            }
        }
    for (std::size_t n = 0; n < csi.num_tus; ++n) {
        const std::size_t k = plan.tu_carrier[n];
        if (tu_layouts[n] != 1 || tu_where[n] != k) {
            fail("TU " + std::to_string(n) + " is not scheduled on exactly one carrier");
            continue;
        }
        const auto allowed = config.allowed_carriers(csi.tbs_color[csi.serving_tbs[n]]);
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            fail("TU " + std::to_string(n) + " uses carrier " + std::to_string(k) + " outside its reuse block");
    }

    const double tol = 1e-9 * plan.interval_s;
    for (std::size_t k = 0; k < K; ++k) {
        const TimeSliceLayout& sat = plan.satellite[k];
        if (!sat.tiles() || (!sat.empty() && sat.interval_s != plan.interval_s))
            fail("satellite layout of carrier " + std::to_string(k) + " does not tile [0, T)");
        for (std::size_t m = 0; m < M; ++m) {
            const TimeSliceLayout& ter = plan.terrestrial_layout(k, m);
            if (!ter.tiles() || (!ter.empty() && ter.interval_s != plan.interval_s))
                fail("terrestrial layout (" + std::to_string(k) + ", " + std::to_string(m) + ") does not tile [0, T)");
            const OverlapMatrix& o = plan.overlap(k, m);
            if (o.rows != sat.slices.size() || o.cols != ter.slices.size()) {
                fail("overlap matrix shape mismatch on carrier " + std::to_string(k));
                continue;
            }
            if (sat.empty() || ter.empty())
                continue;
            bool ok = std::abs(o.total() - plan.interval_s) <= tol;
            for (std::size_t i = 0; i < o.rows; ++i)
                ok = ok && std::abs(o.row_sum(i) - sat.slices[i].duration()) <= tol;
            for (std::size_t j = 0; j < o.cols; ++j)
                ok = ok && std::abs(o.col_sum(j) - ter.slices[j].duration()) <= tol;
            if (!ok)
                fail("overlap conservation fails on (" + std::to_string(k) + ", " + std::to_string(m) + ")");
        }
    }
    return issues;
}

std::vector<std::size_t> assign_satellite_clusters(const LinkClusterSet& clusters, std::size_t num_carriers,
                                                   int reuse_factor)
{
    if (clusters.clusters.size() != num_carriers)
        throw SchedulingError("assign_satellite_clusters: need exactly one cluster per carrier");
    std::vector<std::size_t> mapping(num_carriers);
    if (reuse_factor <= 1) {
        std::iota(mapping.begin(), mapping.end(), std::size_t{0});
        return mapping;
    }
    const auto F = static_cast<std::size_t>(reuse_factor);
    if (num_carriers % F != 0)
        throw SchedulingError("assign_satellite_clusters: F does not divide K");
    if (clusters.coarse_labels.size() != num_carriers)
        throw SchedulingError("assign_satellite_clusters: coarse labels missing");
    const std::size_t block = num_carriers / F;
    std::vector<std::size_t> next(F, 0);
    for (std::size_t c = 0; c < num_carriers; ++c) {
        const int f = clusters.coarse_labels[c];
        if (f < 0 || static_cast<std::size_t>(f) >= F)
            throw SchedulingError("assign_satellite_clusters: coarse label outside [0, F)");
        if (next[f] == block)
            throw SchedulingError("assign_satellite_clusters: coarse label " + std::to_string(f) +
                                  " has more clusters than its carrier block");
        mapping[c] = static_cast<std::size_t>(f) * block + next[f]++;
    }
    return mapping;
}

std::vector<std::size_t> tu_quotas(std::size_t tus_per_tbs, std::size_t allowed)
{
    std::vector<std::size_t> q(allowed, allowed ? tus_per_tbs / allowed : 0);
    for (std::size_t i = 0; allowed && i < tus_per_tbs % allowed; ++i)
        ++q[i];
    return q;
}

std::vector<std::size_t> assign_one_tbs(const std::vector<std::vector<double>>& utility,
                                        const std::vector<std::vector<double>>& violation_db,
                                        const std::vector<std::size_t>& carriers,
                                        const std::vector<std::size_t>& quotas)
{
    constexpr double kInfeasible = 1e6;
    const std::size_t V = utility.size();
    std::vector<std::size_t> slot_carrier;
    for (std::size_t c = 0; c < carriers.size(); ++c)
        slot_carrier.insert(slot_carrier.end(), quotas[c], c);
    if (slot_carrier.size() != V)
        throw SchedulingError("assign_tbs_tu_links: quotas do not cover the TBS's TUs");

    auto cost = [&](std::size_t i, std::size_t c) {
        return violation_db[i][c] > 0.0 ? kInfeasible + violation_db[i][c] : -utility[i][c];
    };
    std::vector<double> matrix(V * V);
    for (std::size_t i = 0; i < V; ++i)
        for (std::size_t s = 0; s < V; ++s)
            matrix[i * V + s] = cost(i, slot_carrier[s]);
    const Assignment a = hungarian(matrix, V, V);

    std::vector<std::size_t> pick(V);
    for (std::size_t i = 0; i < V; ++i)
        pick[i] = slot_carrier[a.row_to_col[i]];
    // Equal-cost exchanges move lower TU indices to lower carriers.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < V; ++i)
            for (std::size_t j = i + 1; j < V; ++j)
                if (pick[i] > pick[j] && cost(i, pick[j]) + cost(j, pick[i]) == cost(i, pick[i]) + cost(j, pick[j])) {
                    std::swap(pick[i], pick[j]);
                    changed = true;
                }
    }
    std::vector<std::size_t> out(V);
    for (std::size_t i = 0; i < V; ++i)
        out[i] = carriers[pick[i]];
    return out;
}

TuAssignment assign_tbs_tu_links(const PlannerCsi& csi, const ScenarioConfig& config,
                                 const std::vector<TimeSliceLayout>& satellite_layouts,
                                 const std::vector<double>& laa_power_dbw, const TuRateFn& rate)
{
    TuAssignment result;
    result.tu_carrier.assign(csi.num_tus, npos);
    const double gamma_mw = dbm_to_mw(config.gamma_th_dbm());

    std::vector<std::vector<std::size_t>> tus_of(csi.num_tbs);
    for (std::size_t n = 0; n < csi.num_tus; ++n)
        tus_of[csi.serving_tbs[n]].push_back(n);

    for (std::size_t m = 0; m < csi.num_tbs; ++m) {
        const std::vector<std::size_t>& tus = tus_of[m];
        if (tus.empty())
            continue;
        const std::vector<std::size_t> carriers = config.allowed_carriers(csi.tbs_color[m]);
        const std::vector<std::size_t> quotas = tu_quotas(tus.size(), carriers.size());
        std::vector<std::vector<double>> utility(tus.size(), std::vector<double>(carriers.size(), 0.0));
        std::vector<std::vector<double>> violation(tus.size(), std::vector<double>(carriers.size(), 0.0));
        for (std::size_t i = 0; i < tus.size(); ++i) {
            const std::size_t n = tus[i];
            for (std::size_t c = 0; c < carriers.size(); ++c) {
                const TimeSliceLayout& sat = satellite_layouts[carriers[c]];
                if (sat.empty()) {
                    utility[i][c] = rate(n, npos, 0.0);
                    continue;
                }
                double u_sum = 0.0, worst = 0.0;
                for (const auto& s : sat.slices) {
                    const double p = laa_power_dbw[s.link_id];
                    u_sum += s.duration() / sat.interval_s * rate(n, s.link_id, p);
                    const double received = dbw_to_mw(p) * csi.interference(s.link_id, n);
                    if (received > gamma_mw)
                        worst = std::max(worst, std::max(linear_to_db(received / gamma_mw), 1e-12));
                }
                utility[i][c] = u_sum;
                violation[i][c] = worst;
            }
        }
        const std::vector<std::size_t> picked = assign_one_tbs(utility, violation, carriers, quotas);
        for (std::size_t i = 0; i < tus.size(); ++i) {
            result.tu_carrier[tus[i]] = picked[i];
            const auto c = static_cast<std::size_t>(
                std::find(carriers.begin(), carriers.end(), picked[i]) - carriers.begin());
            if (violation[i][c] > 0.0)
                result.infeasible_tus.push_back(tus[i]);
        }
    }
    std::sort(result.infeasible_tus.begin(), result.infeasible_tus.end());
    return result;
}

}  // namespace skyshare
