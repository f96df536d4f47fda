#include "skyshare/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>

#include "skyshare/errors.hpp"
#include "skyshare/features.hpp"
#include "skyshare/kernels.hpp"
#include "skyshare/rng.hpp"
#include "skyshare/units.hpp"

namespace skyshare {

const char* scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::proposed:
        return "proposed";
    case Scheme::finesync:
        return "finesync";
    case Scheme::randscheme:
        return "randscheme";
    case Scheme::nosharing:
        return "nosharing";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name)
{
    for (Scheme s : all_schemes())
        if (name == scheme_name(s))
            return s;
    return std::nullopt;
}

std::vector<Scheme> all_schemes() { return {Scheme::proposed, Scheme::finesync, Scheme::randscheme, Scheme::nosharing}; }

std::uint64_t topology_seed(std::uint64_t master_seed, std::size_t index)
{
    return derive_seed(master_seed, SeedStream::topology, {index});
}

Scenario make_scenario(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options)
{
    Scenario sc;
    sc.config = config;
    sc.topology = generate_topology(config, seed);
    sc.truth = build_planner_csi(sc.topology, config);
    sc.csi = options.radiomap ? csi_from_radio_map(*options.radiomap, sc.topology, config) : sc.truth;
    return sc;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// What each TU is exposed to under a plan: LAA interference terms weighted by
// overlap, the share of its time with the satellite side silent, and the mean
// power of every co-carrier TBS.
struct Exposure {
    std::vector<std::vector<TuTerm>> terms;  // [n]
    std::vector<double> free_weight;         // [n]
    std::vector<double> tbs_power_mw;        // [k * M + m]
};

Exposure exposure(const SchedulePlan& plan, const std::vector<double>& p_laa_dbw, const std::vector<double>& p_tbs_dbm,
                  const PlannerCsi& csi)
{
    const std::size_t N = csi.num_tus, M = plan.num_tbs, K = plan.num_carriers;
    const double T = plan.interval_s;
    Exposure e;
    e.terms.resize(N);
    e.free_weight.assign(N, 0.0);
    e.tbs_power_mw.assign(K * M, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const TimeSliceLayout& sat = plan.satellite[k];
        for (std::size_t m = 0; m < M; ++m) {
            const TimeSliceLayout& ter = plan.terrestrial_layout(k, m);
            const OverlapMatrix& o = plan.overlap(k, m);
            std::set<std::size_t> tus;
            std::map<std::size_t, std::map<std::size_t, double>> weights;  // n -> u -> weight
            for (std::size_t j = 0; j < ter.slices.size(); ++j) {
                const std::size_t n = ter.slices[j].link_id;
                tus.insert(n);
                if (sat.empty()) {
                    e.free_weight[n] += ter.slices[j].duration() / T;
                    continue;
                }
                for (std::size_t i = 0; i < sat.slices.size(); ++i)
                    if (o.at(i, j) > 0.0)
                        weights[n][sat.slices[i].link_id] += o.at(i, j) / T;
            }
            for (const auto& [n, by_laa] : weights)
                for (const auto& [u, w] : by_laa)
                    e.terms[n].push_back({u, w, dbw_to_mw(p_laa_dbw[u]) * csi.interference(u, n)});
            if (!tus.empty()) {
                double acc = 0.0;
                for (std::size_t n : tus)
                    acc += dbm_to_mw(p_tbs_dbm[n]);
                e.tbs_power_mw[k * M + m] = acc / static_cast<double>(tus.size());
            }
        }
    }
    return e;
}

std::vector<double> cross_levels(std::size_t n, std::size_t k, const Exposure& e, const PlannerCsi& csi,
                                 const ScenarioConfig& config, std::size_t M)
{
    std::vector<double> out(M, 0.0);
    if (!config.cross_tbs_interference)
        return out;
    for (std::size_t m = 0; m < M; ++m)
        if (m != csi.serving_tbs[n])
            out[m] = e.tbs_power_mw[k * M + m] * csi.cross(m, n);
    return out;
}

}  // namespace

RealizedRates realized_sum_rate(const PlannerCsi& truth, const SchedulePlan& plan, const PowerAllocation& powers,
                                const ScenarioConfig& config, std::uint64_t seed, int threads)
{
    const std::size_t N = truth.num_tus, U = truth.num_laas, M = plan.num_tbs;
    const double T = plan.interval_s;
    const double B = config.bandwidth_hz;
    const Exposure e = exposure(plan, powers.p_laa_dbw, powers.p_tbs_dbm, truth);

    std::vector<TuFadingBank> banks(N);
    const auto count = static_cast<long long>(N);
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1)
    for (long long i = 0; i < count; ++i) {
        const auto n = static_cast<std::size_t>(i);
        const std::size_t k = plan.tu_carrier[n];
        if (k == npos)
            continue;
        BankSpec spec;
        spec.signal_mw = dbm_to_mw(powers.p_tbs_dbm[n]) * truth.ter(n);
        spec.cross_mw = cross_levels(n, k, e, truth, config, M);
        spec.noise_mw = dbm_to_mw(config.noise_power_dbm);
        spec.signal_fading = config.terrestrial_fading;
        spec.cross_fading = config.cross_fading;
        spec.n_mc = config.eval_mc_samples;
        spec.seed = bank_seed(seed, SeedStream::eval_terrestrial, n);
        banks[n] = make_bank(spec);
    }

    TuRateJob job;
    job.banks = &banks;
    job.terms = e.terms;
    job.free_weight = e.free_weight;
    job.fading = config.interference_fading;
    job.seed_base = seed;
    job.stream = SeedStream::eval_terrestrial;
    const std::vector<double> per_tu = threads > 1 ? tu_rates_parallel(job, threads) : tu_rates_serial(job);

    RealizedRates r;
    r.tu_bps.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
        r.tu_bps[n] = B * per_tu[n];
        r.terrestrial_bps += r.tu_bps[n];
    }

    r.laa_bps.assign(U, 0.0);
    for (const TimeSliceLayout& sat : plan.satellite)
        for (const TimeSlice& s : sat.slices) {
            const std::size_t u = s.link_id;
            const double rate =
                expected_rate(truth.sat(u), dbw_to_dbm(powers.p_laa_dbw[u]), {}, config.satellite_fading,
                              config.noise_power_dbm, config.eval_mc_samples,
                              derive_seed(seed, SeedStream::eval_satellite, {u}));
            r.laa_bps[u] += B * (s.duration() / T) * rate;
        }
    for (std::size_t u = 0; u < U; ++u)
        r.satellite_bps += r.laa_bps[u];
    return r;
}

RealizedRates realized_sum_rate(const Topology& topology, const SchedulePlan& plan, const PowerAllocation& powers,
                                const ScenarioConfig& config, std::uint64_t seed)
{
    return realized_sum_rate(build_planner_csi(topology, config), plan, powers, config, seed, 1);
}

double planner_mean_sinr_sum(const SchedulePlan& plan, const PowerAllocation& powers, const PlannerCsi& csi,
                             const ScenarioConfig& config, const std::vector<double>& p_tbs_dbm)
{
    const Exposure e = exposure(plan, powers.p_laa_dbw, p_tbs_dbm, csi);
    const double noise = dbm_to_mw(config.noise_power_dbm);
    double total = 0.0;
    for (std::size_t n = 0; n < csi.num_tus; ++n) {
        const std::size_t k = plan.tu_carrier[n];
        if (k == npos)
            continue;
        const double signal = dbm_to_mw(p_tbs_dbm[n]) * csi.ter(n);
        double background = noise;
        for (double c : cross_levels(n, k, e, csi, config, plan.num_tbs))
            background += c;
        double rate = e.free_weight[n] * std::log2(1.0 + signal / background);
        for (const TuTerm& t : e.terms[n])
            rate += t.weight * std::log2(1.0 + signal / (background + t.interference_mw));
        total += rate;
    }
    return total;
}

SchedulePlan fine_sync_plan(const SchedulePlan& coarse, const std::function<double(std::size_t, std::size_t)>& pair_rate)
{
    SchedulePlan plan = coarse;
    plan.sync = SyncMode::fine;
    for (std::size_t k = 0; k < plan.num_carriers; ++k) {
        const TimeSliceLayout& sat = plan.satellite[k];
        for (std::size_t m = 0; m < plan.num_tbs; ++m) {
            TimeSliceLayout& ter = plan.terrestrial[k * plan.num_tbs + m];
            if (sat.empty() || ter.empty())
                continue;
            std::vector<std::size_t> tus;
            for (const auto& s : ter.slices)
                tus.push_back(s.link_id);
            std::sort(tus.begin(), tus.end());
            tus.erase(std::unique(tus.begin(), tus.end()), tus.end());

            const std::size_t S = sat.slices.size(), Tn = tus.size();
            const std::size_t L = std::lcm(S, Tn);
            const std::size_t per_sat = L / S, per_tu = L / Tn;

            // Fine slots subdivide satellite slices so their boundaries coincide exactly.
            std::vector<TimeSlice> slots;
            std::vector<std::size_t> slot_laa;
            for (const TimeSlice& s : sat.slices) {
                const double d = s.duration();
                for (std::size_t j = 0; j < per_sat; ++j) {
                    const double a = j == 0 ? s.start : s.start + d * (static_cast<double>(j) / per_sat);
                    const double b = j + 1 == per_sat ? s.end : s.start + d * (static_cast<double>(j + 1) / per_sat);
                    slots.push_back({0, a, b});
                    slot_laa.push_back(s.link_id);
                }
            }
            std::vector<double> rate(Tn * S);
            for (std::size_t q = 0; q < Tn; ++q)
                for (std::size_t i = 0; i < S; ++i)
                    rate[q * S + i] = pair_rate(tus[q], sat.slices[i].link_id);
            std::vector<double> cost(L * L);
            for (std::size_t l = 0; l < L; ++l)
                for (std::size_t c = 0; c < L; ++c)
                    cost[l * L + c] = -rate[(c / per_tu) * S + l / per_sat];
            const Assignment a = hungarian(cost, L, L);
            for (std::size_t l = 0; l < L; ++l)
                slots[l].link_id = tus[a.row_to_col[l] / per_tu];
            ter.slices = std::move(slots);
        }
    }
    refresh_overlaps(plan);
    return plan;
}

namespace {

std::vector<double> tbs_power_grid(const PowerBounds& b)
{
    std::vector<double> grid;
    for (double p = b.tbs_min_dbm; p <= b.tbs_max_dbm + 1e-12; p += 2.0)
        grid.push_back(p);
    return grid;
}

void finish(SchemeResult& r, const Scenario& sc, const RunOptions& options, bool satellite_idle)
{
    const auto issues = check_plan(r.plan, sc.csi, sc.config, satellite_idle);
    if (!issues.empty())
        throw SchedulingError(std::string(scheme_name(r.scheme)) + " plan fails invariants: " + issues.front());
    r.violations = verify_interference(r.plan, r.powers, sc.csi, sc.config.gamma_th_dbm());
    const auto t0 = Clock::now();
    r.rates = realized_sum_rate(sc.truth, r.plan, r.powers, sc.config, sc.topology.seed, options.parallelism);
    r.timings.evaluation_s = seconds_since(t0);
}

std::vector<std::size_t> round_robin_tus(const PlannerCsi& csi, const ScenarioConfig& config)
{
    std::vector<std::size_t> carrier(csi.num_tus, npos);
    std::vector<std::size_t> local(csi.num_tbs, 0);
    for (std::size_t n = 0; n < csi.num_tus; ++n) {
        const std::size_t m = csi.serving_tbs[n];
        const auto allowed = config.allowed_carriers(csi.tbs_color[m]);
        carrier[n] = allowed[local[m]++ % allowed.size()];
    }
    return carrier;
}

struct ProposedState {
    SchemeResult result;
    std::unique_ptr<PlannerRates> rates;
};

ProposedState plan_proposed(const Scenario& sc, const RunOptions& options)
{
    const ScenarioConfig& cfg = sc.config;
    const PlannerCsi& csi = sc.csi;
    const std::size_t K = cfg.num_carriers, N = csi.num_tus;
    const int threads = options.parallelism;

    ProposedState st;
    SchemeResult& r = st.result;
    r.scheme = Scheme::proposed;

    auto t0 = Clock::now();
    st.rates = std::make_unique<PlannerRates>(csi, cfg, threads);
    const FeatureSet fs = build_feature_set(*st.rates, threads > 1, threads);
    r.timings.features_s = seconds_since(t0);

    t0 = Clock::now();
    LinkClusterSet clusters =
        hierarchical_cluster(fs.vectors, cfg.reuse_factor(), K, cfg.resolved_quotas(),
                             derive_seed(sc.topology.seed, SeedStream::clustering), cfg.kmeans_max_iters,
                             cfg.kmeans_restarts);
    const std::vector<std::size_t> mapping = assign_satellite_clusters(clusters, K, cfg.reuse_factor());
    std::vector<std::vector<std::size_t>> carrier_laas(K);
    for (std::size_t c = 0; c < mapping.size(); ++c)
        carrier_laas[mapping[c]] = clusters.clusters[c];
    r.timings.clustering_s = seconds_since(t0);

    t0 = Clock::now();
    std::vector<TimeSliceLayout> sat_layouts;
    for (std::size_t k = 0; k < K; ++k)
        sat_layouts.push_back(build_time_slices(carrier_laas[k], cfg.interval_s, {}, k, LinkSide::satellite));
    const double p_min = cfg.power.laa_min_dbw;
    const std::vector<double> pre_bound(csi.num_laas, p_min);
    const PlannerRates& rates = *st.rates;
    const TuRateFn rate = [&](std::size_t n, std::size_t u, double p) {
        if (u == npos)
            return rates.interference_free(n);
        if (p == p_min)
            return fs.rate_at_min[u * N + n];
        return rates.rate(n, u, p);
    };
    const TuAssignment assignment = assign_tbs_tu_links(csi, cfg, sat_layouts, pre_bound, rate);
    r.plan = assemble_plan(carrier_laas, assignment.tu_carrier, csi, cfg);
    r.plan.cluster_carrier = mapping;
    r.clusters = std::move(clusters);
    r.timings.scheduling_s = seconds_since(t0);

    t0 = Clock::now();
    r.powers = control_laa_powers(r.plan, csi, cfg);
    r.powers.p_tbs_dbm = set_tbs_powers(cfg, N);
    if (cfg.refine_tbs_power) {
        const SchedulePlan& plan = r.plan;
        const PowerAllocation& powers = r.powers;
        r.powers.p_tbs_dbm = refine_tbs_powers(
            r.powers.p_tbs_dbm,
            [&](const std::vector<double>& p) { return planner_mean_sinr_sum(plan, powers, csi, cfg, p); },
            tbs_power_grid(cfg.power));
    }
    r.timings.power_s = seconds_since(t0);
    return st;
}

SchemeResult finesync_from(const ProposedState& st, const Scenario& sc, const RunOptions& options)
{
    SchemeResult r;
    r.scheme = Scheme::finesync;
    r.clusters = st.result.clusters;
    r.timings = st.result.timings;
    const auto t0 = Clock::now();
    const PlannerRates& rates = *st.rates;
    const std::vector<double>& p = st.result.powers.p_laa_dbw;
    r.plan = fine_sync_plan(st.result.plan, [&](std::size_t n, std::size_t u) { return rates.rate(n, u, p[u]); });
    r.powers = control_laa_powers(r.plan, sc.csi, sc.config);
    r.powers.p_tbs_dbm = st.result.powers.p_tbs_dbm;
    r.timings.scheduling_s += seconds_since(t0);
    finish(r, sc, options, false);
    return r;
}

}  // namespace

SchemeResult run_randscheme(const Scenario& sc, const RunOptions& options)
{
    const ScenarioConfig& cfg = sc.config;
    const PlannerCsi& csi = sc.csi;
    SchemeResult r;
    r.scheme = Scheme::randscheme;
    const auto t0 = Clock::now();

    std::vector<std::size_t> order(csi.num_laas);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Engine engine(derive_seed(sc.topology.seed, SeedStream::randscheme));
    std::shuffle(order.begin(), order.end(), engine);
    const std::vector<std::size_t> quotas = cfg.resolved_quotas();
    std::vector<std::vector<std::size_t>> carrier_laas(cfg.num_carriers);
    std::size_t next = 0;
    for (std::size_t k = 0; k < cfg.num_carriers; ++k) {
        for (std::size_t i = 0; i < quotas[k] && next < order.size(); ++i)
            carrier_laas[k].push_back(order[next++]);
        std::sort(carrier_laas[k].begin(), carrier_laas[k].end());
    }
    r.plan = assemble_plan(carrier_laas, round_robin_tus(csi, cfg), csi, cfg);
    r.plan.cluster_carrier.resize(cfg.num_carriers);
    std::iota(r.plan.cluster_carrier.begin(), r.plan.cluster_carrier.end(), std::size_t{0});

    r.powers.p_laa_dbw.assign(csi.num_laas, cfg.power.laa_min_dbw);
    r.powers.p_tbs_dbm = set_tbs_powers(cfg, csi.num_tus);
    r.powers.violation_flags = verify_interference(r.plan, r.powers, csi, cfg.gamma_th_dbm());
    r.timings.scheduling_s = seconds_since(t0);
    finish(r, sc, options, false);
    return r;
}

SchemeResult run_nosharing(const Scenario& sc, const RunOptions& options)
{
    const ScenarioConfig& cfg = sc.config;
    const PlannerCsi& csi = sc.csi;
    SchemeResult r;
    r.scheme = Scheme::nosharing;
    const auto t0 = Clock::now();
    r.plan = assemble_plan({}, round_robin_tus(csi, cfg), csi, cfg);
    r.powers.p_laa_dbw.assign(csi.num_laas, cfg.power.laa_min_dbw);
    r.powers.p_tbs_dbm = set_tbs_powers(cfg, csi.num_tus);
    r.timings.scheduling_s = seconds_since(t0);
    finish(r, sc, options, true);
    return r;
}

SchemeResult run_proposed(const Scenario& sc, const RunOptions& options)
{
    ProposedState st = plan_proposed(sc, options);
    finish(st.result, sc, options, false);
    return std::move(st.result);
}

SchemeResult run_finesync(const Scenario& sc, const RunOptions& options)
{
    const ProposedState st = plan_proposed(sc, options);
    return finesync_from(st, sc, options);
}

SchemeResult run_scheme(Scheme scheme, const Scenario& sc, const RunOptions& options)
{
    switch (scheme) {
    case Scheme::proposed:
        return run_proposed(sc, options);
    case Scheme::finesync:
        return run_finesync(sc, options);
    case Scheme::randscheme:
        return run_randscheme(sc, options);
    case Scheme::nosharing:
        return run_nosharing(sc, options);
    }
    throw Error("unknown scheme");
}

SchemeResult run_proposed(const ScenarioConfig& config, std::uint64_t seed)
{
    return run_proposed(make_scenario(config, seed));
}
SchemeResult run_finesync(const ScenarioConfig& config, std::uint64_t seed)
{
    return run_finesync(make_scenario(config, seed));
}
SchemeResult run_randscheme(const ScenarioConfig& config, std::uint64_t seed)
{
    return run_randscheme(make_scenario(config, seed));
}
SchemeResult run_nosharing(const ScenarioConfig& config, std::uint64_t seed)
{
    return run_nosharing(make_scenario(config, seed));
}

namespace {

// Runs the requested schemes plus the baseline, planning the proposed
// pipeline once when both it and FineSync are needed.
std::map<Scheme, SchemeResult> run_all(const Scenario& sc, const std::vector<Scheme>& schemes,
                                       const RunOptions& options)
{
    std::set<Scheme> wanted(schemes.begin(), schemes.end());
    wanted.insert(Scheme::nosharing);
    std::map<Scheme, SchemeResult> out;
    if (wanted.count(Scheme::proposed) || wanted.count(Scheme::finesync)) {
        ProposedState st = plan_proposed(sc, options);
        if (wanted.count(Scheme::finesync))
            out.emplace(Scheme::finesync, finesync_from(st, sc, options));
        if (wanted.count(Scheme::proposed)) {
            finish(st.result, sc, options, false);
            out.emplace(Scheme::proposed, std::move(st.result));
        }
    }
    if (wanted.count(Scheme::randscheme))
        out.emplace(Scheme::randscheme, run_randscheme(sc, options));
    out.emplace(Scheme::nosharing, run_nosharing(sc, options));
    return out;
}

Statistic statistic(const std::vector<double>& v)
{
    Statistic s;
    if (v.empty())
        return s;
    for (double x : v)
        s.mean += x;
    s.mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v)
        acc += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(acc / static_cast<double>(v.size()));
    return s;
}

}  // namespace

const SchemeAggregate* SimulationReport::aggregate(Scheme s) const
{
    for (const auto& a : aggregates)
        if (a.scheme == s)
            return &a;
    return nullptr;
}

SimulationReport replicate_seeds(const ScenarioConfig& config, const std::vector<Scheme>& schemes,
                                 const std::vector<std::uint64_t>& seeds, std::uint64_t master_seed,
                                 const RunOptions& options)
{
    SimulationReport report;
    report.config_digest = config.digest();
    report.master_seed = master_seed;
    report.schemes = schemes;

    for (std::size_t t = 0; t < seeds.size(); ++t) {
        TopologyOutcome outcome;
        outcome.index = t;
        outcome.seed = seeds[t];
        try {
            const Scenario sc = make_scenario(config, seeds[t], options);
            outcome.layout_digest = sc.topology.layout_digest();
            const auto results = run_all(sc, schemes, options);
            const double baseline = results.at(Scheme::nosharing).rates.total_bps();
            for (Scheme s : schemes) {
                const SchemeResult& r = results.at(s);
                SchemeOutcome o;
                o.scheme = s;
                o.satellite_bps = r.rates.satellite_bps;
                o.terrestrial_bps = r.rates.terrestrial_bps;
                o.total_bps = r.rates.total_bps();
                o.improvement_pct = 100.0 * (o.total_bps - baseline) / baseline;
                o.flagged_pairs = r.powers.violation_flags.size();
                o.violating_pairs = r.violations.size();
                std::vector<ViolationPair> unflagged;
                std::set_difference(r.violations.begin(), r.violations.end(), r.powers.violation_flags.begin(),
                                    r.powers.violation_flags.end(), std::back_inserter(unflagged));
                o.unflagged_violations = unflagged.size();
                double acc = 0.0;
                std::size_t active = 0;
                for (std::size_t u = 0; u < r.plan.laa_carrier.size(); ++u)
                    if (r.plan.laa_carrier[u] != npos) {
                        acc += r.powers.p_laa_dbw[u];
                        ++active;
                    }
                o.mean_laa_power_dbw = active ? acc / static_cast<double>(active) : 0.0;
                o.plan_digest = r.plan.digest();
                o.timings = r.timings;
                outcome.schemes.push_back(std::move(o));
            }
            ++report.succeeded;
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.error = e.what();
            outcome.schemes.clear();
            ++report.failed;
        }
        report.topologies.push_back(std::move(outcome));
    }

    for (std::size_t i = 0; i < schemes.size(); ++i) {
        SchemeAggregate a;
        a.scheme = schemes[i];
        std::vector<double> sat, ter, total, imp, viol;
        for (const auto& t : report.topologies) {
            if (!t.ok)
                continue;
            const SchemeOutcome& o = t.schemes[i];
            sat.push_back(o.satellite_bps);
            ter.push_back(o.terrestrial_bps);
            total.push_back(o.total_bps);
            imp.push_back(o.improvement_pct);
            viol.push_back(static_cast<double>(o.violating_pairs));
        }
        a.count = sat.size();
        a.satellite_bps = statistic(sat);
        a.terrestrial_bps = statistic(ter);
        a.total_bps = statistic(total);
        a.improvement_pct = statistic(imp);
        a.violating_pairs = statistic(viol);
        report.aggregates.push_back(a);
    }
    return report;
}

SimulationReport replicate(const ScenarioConfig& config, const std::vector<Scheme>& schemes,
                           std::size_t n_topologies, std::uint64_t master_seed, const RunOptions& options)
{
    if (n_topologies == 0)
        throw ConfigError("replicate: at least one topology is required");
    std::vector<std::uint64_t> seeds;
    for (std::size_t t = 0; t < n_topologies; ++t)
        seeds.push_back(topology_seed(master_seed, t));
    return replicate_seeds(config, schemes, seeds, master_seed, options);
}

const char* sweep_parameter_name(SweepParameter p)
{
    switch (p) {
    case SweepParameter::tbs_power:
        return "tbs_power";
    case SweepParameter::interval:
        return "T";
    case SweepParameter::reuse_factor:
        return "F";
    }
    return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(const std::string& name)
{
    if (name == "tbs_power")
        return SweepParameter::tbs_power;
    if (name == "T" || name == "interval")
        return SweepParameter::interval;
    if (name == "F" || name == "reuse_factor")
        return SweepParameter::reuse_factor;
    return std::nullopt;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& config, SweepParameter parameter, double value)
{
    ScenarioConfig c = config;
    switch (parameter) {
    case SweepParameter::tbs_power:
        if (!(value >= c.power.tbs_min_dbm && value <= c.power.tbs_max_dbm))
            throw ConfigError("tbs_power value " + std::to_string(value) + " dBm outside [" +
                              std::to_string(c.power.tbs_min_dbm) + ", " + std::to_string(c.power.tbs_max_dbm) +
                              "] dBm");
        c.tbs_power_dbm = value;
        break;
    case SweepParameter::interval:
        if (!(value > 0) || !std::isfinite(value))
            throw ConfigError("T value " + std::to_string(value) + " s must be positive");
        c.interval_s = value;
        break;
    case SweepParameter::reuse_factor:
        if (!(value >= 1) || value != std::floor(value))
            throw ConfigError("F value " + std::to_string(value) + " must be a positive integer");
        c.partial_reuse_factor = static_cast<int>(value);
        c.reuse = c.partial_reuse_factor == 1 ? ReuseMode::full : ReuseMode::partial;
        break;
    }
    for (const auto& d : validate_config(c))
        if (d.severity == Diagnostic::Severity::error)
            throw ConfigError(std::string(sweep_parameter_name(parameter)) + " = " + std::to_string(value) + ": " +
                              d.format());
    return c;
}

std::vector<SweepRow> sweep(const ScenarioConfig& config, SweepParameter parameter, const std::vector<double>& values,
                            const std::vector<Scheme>& schemes, const RunOptions& options)
{
    std::vector<ScenarioConfig> configs;
    for (double v : values)
        configs.push_back(apply_sweep_value(config, parameter, v));
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i)
        rows.push_back({values[i], replicate(configs[i], schemes, config.num_topologies, config.master_seed, options)});
    return rows;
}

}  // namespace skyshare
