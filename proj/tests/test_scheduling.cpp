#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <bit>
#include <numeric>
#include <random>

#include "skyshare/errors.hpp"
#include "skyshare/features.hpp"
#include "skyshare/scheduling.hpp"
#include "skyshare/units.hpp"
#include "support.hpp"

using namespace skyshare;

namespace {

TimeSliceLayout random_layout(std::mt19937_64& rng, double T)
{
    std::uniform_int_distribution<std::size_t> count(1, 12);
    std::uniform_real_distribution<double> w(0.01, 5.0);
    const std::size_t n = count(rng);
    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<double> weights(n);
    for (double& x : weights)
        x = w(rng);
    return build_time_slices(ids, T, weights);
}

}  // namespace

TEST_CASE("time slices")
{
    auto l = build_time_slices({0, 1, 2, 3, 4, 5, 6, 7}, 10.0);
    REQUIRE(l.slices.size() == 8);
    for (const auto& s : l.slices)
        CHECK(s.duration() == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(l.tiles());
    CHECK(l.slices.back().end == 10.0);

    l = build_time_slices({4, 9}, 10.0);
    CHECK(l.slices[0].duration() == 5.0);
    CHECK(l.slices[1].duration() == 5.0);

    l = build_time_slices({7, 2}, 4.0, {1.0, 3.0});
    CHECK(l.slices[0].link_id == 2);
    CHECK(l.slices[0].duration() == 3.0);
    CHECK(l.slices[1].link_id == 7);
    CHECK(l.slices[1].duration() == 1.0);

    l = build_time_slices({}, 10.0);
    CHECK(l.empty());
    CHECK(l.tiles());

    CHECK_THROWS_AS(build_time_slices({1}, 0.0), SchedulingError);
    CHECK_THROWS_AS(build_time_slices({1, 2}, 1.0, {1.0}), SchedulingError);
    CHECK_THROWS_AS(build_time_slices({1, 2}, 1.0, {1.0, 0.0}), SchedulingError);
}

TEST_CASE("overlap hand cases")
{
    auto sat = build_time_slices({0, 1, 2, 3, 4, 5, 6, 7}, 10.0);
    auto ter = build_time_slices({10, 11}, 10.0);
    CHECK(overlap_matrix(build_time_slices({0}, 10.0, {}, 0), ter).at(0, 0) == 5.0);

    auto o = overlap_matrix(sat, ter);
    CHECK(o.rows == 8);
    CHECK(o.cols == 2);
    CHECK(o.at(0, 0) == 1.25);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(o.at(i, i < 4 ? 0 : 1) == doctest::Approx(1.25));
        CHECK(o.at(i, i < 4 ? 1 : 0) == 0.0);
    }
    CHECK(o.total() == doctest::Approx(10.0));

    // three slices against two: the middle one splits at 5 s
    auto thirds = build_time_slices({0, 1, 2}, 10.0);
    auto q = overlap_matrix(thirds, ter);
    CHECK(q.at(1, 0) == doctest::Approx(5.0 - 10.0 / 3.0));
    CHECK(q.at(1, 1) == doctest::Approx(20.0 / 3.0 - 5.0));

    auto d = overlap_matrix(sat, sat);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(d.at(i, j) == (i == j ? sat.slices[i].duration() : 0.0));

    CHECK_THROWS_AS(overlap_matrix(sat, build_time_slices({1}, 5.0)), SchedulingError);
}

TEST_CASE("overlap conservation on 1000 random layouts")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> interval(0.001, 1000.0);
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const double T = interval(rng);
        const auto sat = random_layout(rng, T);
        const auto ter = random_layout(rng, T);
        const auto o = overlap_matrix(sat, ter);
        const double tol = 1e-9 * T;
        bool ok = sat.tiles() && ter.tiles() && std::abs(o.total() - T) <= tol;
        for (std::size_t i = 0; i < o.rows; ++i)
            ok = ok && std::abs(o.row_sum(i) - sat.slices[i].duration()) <= tol;
        for (std::size_t j = 0; j < o.cols; ++j)
            ok = ok && std::abs(o.col_sum(j) - ter.slices[j].duration()) <= tol;
        failures += ok ? 0 : 1;
    }
    CHECK(failures == 0);
}

TEST_CASE("cluster to carrier mapping")
{
    LinkClusterSet full;
    full.clusters.resize(12);
    auto m = assign_satellite_clusters(full, 12, 1);
    for (std::size_t k = 0; k < 12; ++k)
        CHECK(m[k] == k);

    LinkClusterSet part;
    part.clusters.resize(12);
    part.coarse_labels = {3, 2, 0, 2, 1, 0, 2, 1, 3, 0, 1, 3};
    m = assign_satellite_clusters(part, 12, 4);
    std::vector<std::size_t> of2;
    for (std::size_t c = 0; c < 12; ++c) {
        CHECK(m[c] / 3 == static_cast<std::size_t>(part.coarse_labels[c]));
        if (part.coarse_labels[c] == 2)
            of2.push_back(m[c]);
    }
    CHECK(of2 == std::vector<std::size_t>{6, 7, 8});
    auto sorted = m;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < 12; ++k)
        CHECK(sorted[k] == k);

    LinkClusterSet one;
    one.clusters.resize(1);
    CHECK(assign_satellite_clusters(one, 1, 1) == std::vector<std::size_t>{0});

    part.coarse_labels[0] = 2;  // four clusters claim block 2
    CHECK_THROWS_AS(assign_satellite_clusters(part, 12, 4), SchedulingError);
    part.coarse_labels.pop_back();
    CHECK_THROWS_AS(assign_satellite_clusters(part, 12, 4), SchedulingError);
}

TEST_CASE("TU quotas")
{
    CHECK(tu_quotas(24, 12) == std::vector<std::size_t>(12, 2));
    CHECK(tu_quotas(24, 3) == std::vector<std::size_t>(3, 8));
    CHECK(tu_quotas(10, 4) == std::vector<std::size_t>{3, 3, 2, 2});
}

TEST_CASE("4 TUs x 2 carriers against exhaustive enumeration")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> v(0.0, 5.0);
    const std::vector<std::size_t> carriers = {3, 7}, quotas = {2, 2};
    const std::vector<std::vector<double>> clear(4, std::vector<double>(2, 0.0));
    for (int t = 0; t < 50; ++t) {
        std::vector<std::vector<double>> util(4, std::vector<double>(2));
        for (auto& row : util)
            for (double& x : row)
                x = v(rng);
        double best = -1e18;
        for (unsigned mask = 0; mask < 16; ++mask) {
            if (std::popcount(mask) != 2)
                continue;
            double s = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                s += util[i][(mask >> i) & 1u];
            best = std::max(best, s);
        }
        auto pick = assign_one_tbs(util, clear, carriers, quotas);
        double got = 0.0;
        int on_first = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            const std::size_t c = pick[i] == 3 ? 0 : 1;
            on_first += c == 0;
            got += util[i][c];
        }
        CHECK(on_first == 2);
        CHECK(got == doctest::Approx(best).epsilon(1e-12));
    }

    // equal utilities: lower TU indices take the lower carrier
    const std::vector<std::vector<double>> flat(4, std::vector<double>(2, 1.0));
    CHECK(assign_one_tbs(flat, clear, carriers, quotas) == std::vector<std::size_t>{3, 3, 7, 7});

    // infeasible carrier avoided even at a utility cost, and used when nothing else remains
    std::vector<std::vector<double>> util = {{1, 9}, {1, 1}, {1, 1}, {1, 1}};
    std::vector<std::vector<double>> viol = {{0, 3}, {0, 0}, {0, 0}, {0, 0}};
    CHECK(assign_one_tbs(util, viol, carriers, quotas)[0] == 3);
    viol = {{2, 3}, {0, 0}, {0, 0}, {0, 0}};
    CHECK(assign_one_tbs(util, viol, carriers, quotas)[0] == 3);
}

TEST_CASE("TU avoids the carrier with a harmful LAA")
{
    ScenarioConfig cfg;
    cfg.num_tbs = 1;
    cfg.tus_per_tbs = 2;
    cfg.num_laas = 2;
    cfg.num_carriers = 2;
    cfg.feature_mc_samples = 200;
    // LAA 1 couples strongly into TU 0 only
    PlannerCsi csi = testing::hand_csi(2, 2, 1, {-120, -120}, {-110, -110}, {-170, -170, -115, -170}, {0, 0});
    PlannerRates rates(csi, cfg);
    std::vector<TimeSliceLayout> sat = {build_time_slices({0}, 10.0, {}, 0), build_time_slices({1}, 10.0, {}, 1)};
    TuRateFn fn = [&](std::size_t n, std::size_t u, double p) { return rates.rate(n, u, p); };
    TuAssignment a = assign_tbs_tu_links(csi, cfg, sat, {-3.0, -3.0}, fn);
    CHECK(a.tu_carrier == std::vector<std::size_t>{0, 1});
    CHECK(a.infeasible_tus.empty());

    // quiet network: free-rate ordering decides, ties to the lowest TU index
    PlannerCsi quiet = testing::hand_csi(2, 4, 1, {-120, -120}, {-110, -110, -110, -110},
                                         std::vector<double>(8, -400.0), {0, 0, 0, 0});
    PlannerRates qr(quiet, cfg);
    TuRateFn qf = [&](std::size_t n, std::size_t u, double p) { return qr.rate(n, u, p); };
    a = assign_tbs_tu_links(quiet, cfg, sat, {-3.0, -3.0}, qf);
    CHECK(a.tu_carrier == std::vector<std::size_t>{0, 0, 1, 1});
}

TEST_CASE("per-TBS subproblems are independent of TBS labels")
{
    ScenarioConfig cfg = testing::small_config();
    Topology t = generate_topology(cfg, 8);
    PlannerCsi csi = build_planner_csi(t, cfg);
    PlannerRates rates(csi, cfg);
    std::vector<TimeSliceLayout> sat;
    for (std::size_t k = 0; k < cfg.num_carriers; ++k)
        sat.push_back(build_time_slices({2 * k, 2 * k + 1}, 10.0, {}, k));
    const std::vector<double> p(cfg.num_laas, -3.0);
    TuRateFn fn = [&](std::size_t n, std::size_t u, double pw) { return rates.rate(n, u, pw); };
    TuAssignment base = assign_tbs_tu_links(csi, cfg, sat, p, fn);

    PlannerCsi relabeled = csi;
    for (std::size_t n = 0; n < csi.num_tus; ++n)
        relabeled.serving_tbs[n] = csi.num_tbs - 1 - csi.serving_tbs[n];
    TuAssignment other = assign_tbs_tu_links(relabeled, cfg, sat, p, fn);
    CHECK(other.tu_carrier == base.tu_carrier);
    CHECK(other.infeasible_tus == base.infeasible_tus);
}

TEST_CASE("plan assembly and invariant checks")
{
    ScenarioConfig cfg = testing::small_config();
    Topology t = generate_topology(cfg, 2);
    PlannerCsi csi = build_planner_csi(t, cfg);
    std::vector<std::vector<std::size_t>> laas = {{0, 5}, {1, 4}, {2, 7}, {3, 6}};
    std::vector<std::size_t> tus(csi.num_tus);
    for (std::size_t n = 0; n < csi.num_tus; ++n)
        tus[n] = n % cfg.num_carriers;
    SchedulePlan plan = assemble_plan(laas, tus, csi, cfg);
    CHECK(check_plan(plan, csi, cfg).empty());
    CHECK(plan.laa_carrier[5] == 0);
    CHECK(plan.co_channel_pairs().size() == 2 * csi.num_tus);
    CHECK(plan.digest() == assemble_plan(laas, tus, csi, cfg).digest());

    SchedulePlan broken = plan;
    broken.tu_carrier[0] = 3;
    CHECK_FALSE(check_plan(broken, csi, cfg).empty());
    broken = plan;
    broken.satellite[0].slices[1].end = 9.0;
    CHECK_FALSE(check_plan(broken, csi, cfg).empty());
    broken = plan;
    broken.laa_carrier[0] = 2;
    CHECK_FALSE(check_plan(broken, csi, cfg).empty());

    // partial reuse: a TU outside its colour block is caught
    ScenarioConfig partial = cfg;
    partial.reuse = ReuseMode::partial;
    partial.partial_reuse_factor = 2;
    Topology tp = generate_topology(partial, 2);
    PlannerCsi cp = build_planner_csi(tp, partial);
    std::vector<std::size_t> ok(cp.num_tus), bad(cp.num_tus);
    for (std::size_t n = 0; n < cp.num_tus; ++n) {
        const auto allowed = partial.allowed_carriers(cp.tbs_color[cp.serving_tbs[n]]);
        ok[n] = allowed[n % allowed.size()];
        bad[n] = (ok[n] + 2) % 4;
    }
    CHECK(check_plan(assemble_plan(laas, ok, cp, partial), cp, partial).empty());
    CHECK_FALSE(check_plan(assemble_plan(laas, bad, cp, partial), cp, partial).empty());

    // idle satellite side
    SchedulePlan idle = assemble_plan({}, tus, csi, cfg);
    CHECK(check_plan(idle, csi, cfg, true).empty());
    CHECK(idle.co_channel_pairs().empty());
}

TEST_CASE("fine sync collides only on overlapping slots")
{
    ScenarioConfig cfg = testing::small_config();
    cfg.num_tbs = 1;
    cfg.tus_per_tbs = 2;
    cfg.num_laas = 2;
    cfg.num_carriers = 1;
    PlannerCsi csi = testing::hand_csi(2, 2, 1, {-120, -120}, {-110, -110}, {-150, -150, -150, -150}, {0, 0});
    SchedulePlan plan = assemble_plan({{0, 1}}, {0, 0}, csi, cfg);
    CHECK(plan.co_channel_pairs().size() == 4);
    plan.sync = SyncMode::fine;
    const auto pairs = plan.co_channel_pairs();
    CHECK(pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
    auto tus = plan.co_channel_tus(2);
    CHECK(tus[0] == std::vector<std::size_t>{0});
}
