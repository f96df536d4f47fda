#include <doctest.h>

#include <cmath>
#include <random>

#include "skyshare/errors.hpp"
#include "skyshare/power.hpp"
#include "skyshare/units.hpp"
#include "support.hpp"

using namespace skyshare;

namespace {

PlannerCsi one_laa(std::vector<double> g_int_db)
{
    const std::size_t N = g_int_db.size();
    std::vector<std::size_t> serving(N, 0);
    return testing::hand_csi(1, N, 1, {-120}, std::vector<double>(N, -110), std::move(g_int_db), serving);
}

}  // namespace

TEST_CASE("LAA power control hand cases")
{
    ScenarioConfig cfg;
    const double gamma = cfg.gamma_th_dbm();
    CHECK(gamma == doctest::Approx(-126.2));

    PlannerCsi csi = one_laa({-156.2, -120.0, -170.0});
    const std::size_t none[1] = {};
    auto r = laa_power_control(0, std::span<const std::size_t>(none, 0), csi, cfg.power, gamma);
    CHECK(r.power_dbw == 2.0);
    CHECK_FALSE(r.flagged());

    const std::size_t at_edge[] = {0};
    r = laa_power_control(0, at_edge, csi, cfg.power, gamma);
    CHECK(r.power_dbw == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dbw_to_mw(r.power_dbw) * csi.interference(0, 0) <= dbm_to_mw(gamma));
    CHECK_FALSE(r.flagged());

    const std::size_t far[] = {2};
    CHECK(laa_power_control(0, far, csi, cfg.power, gamma).power_dbw == 2.0);

    // -126.2 dBm - (-120 dB) = -6.2 dBm, far below the -3 dBW floor
    const std::size_t close[] = {2, 1, 0};
    r = laa_power_control(0, close, csi, cfg.power, gamma);
    CHECK(r.power_dbw == -3.0);
    CHECK(r.violated_tus == std::vector<std::size_t>{1});
}

TEST_CASE("LAA power is bounded and non-increasing as TUs are added")
{
    ScenarioConfig cfg;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> g(-175.0, -130.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> gains(8);
        for (double& x : gains)
            x = g(rng);
        PlannerCsi csi = one_laa(gains);
        std::vector<std::size_t> tus;
        double prev = cfg.power.laa_max_dbw;
        for (std::size_t n = 0; n < 8; ++n) {
            tus.push_back(n);
            auto r = laa_power_control(0, tus, csi, cfg.power, cfg.gamma_th_dbm());
            CHECK(r.power_dbw <= prev);
            CHECK(r.power_dbw >= cfg.power.laa_min_dbw);
            CHECK(r.power_dbw <= cfg.power.laa_max_dbw);
            if (!r.flagged()) {
                for (std::size_t m : tus)
                    CHECK(dbw_to_mw(r.power_dbw) * csi.interference(0, m) <= dbm_to_mw(cfg.gamma_th_dbm()));
                // largest such power: a 0.01 dB step up breaks it or leaves the bounds
                bool tight = r.power_dbw == cfg.power.laa_max_dbw;
                for (std::size_t m : tus)
                    tight = tight ||
                            dbw_to_mw(r.power_dbw + 0.01) * csi.interference(0, m) > dbm_to_mw(cfg.gamma_th_dbm());
                CHECK(tight);
            }
            prev = r.power_dbw;
        }
    }
}

TEST_CASE("TBS powers")
{
    ScenarioConfig cfg;
    CHECK(set_tbs_powers(cfg, 5) == std::vector<double>(5, 10.0));
    cfg.tbs_power_dbm = 0.0;
    CHECK(set_tbs_powers(cfg, 2) == std::vector<double>(2, 0.0));
    cfg.tbs_power_dbm = 11.0;
    CHECK_THROWS_AS(set_tbs_powers(cfg, 2), ConfigError);
    cfg.tbs_power_dbm = -0.5;
    CHECK_THROWS_AS(set_tbs_powers(cfg, 2), ConfigError);
}

TEST_CASE("TBS power refinement")
{
    // a lone TU only gains from more power
    auto single = refine_tbs_powers({4.0}, [](const std::vector<double>& p) { return p[0]; });
    CHECK(single == std::vector<double>{10.0});

    // two TUs hurting each other: the result is a coordinate-wise optimum of the grid
    const std::vector<double> grid = {0, 2, 4, 6, 8, 10};
    for (double coupling : {0.0, 0.3, 3.0, 30.0}) {
        TbsPowerObjective f = [coupling](const std::vector<double>& p) {
            const double a = dbm_to_mw(p[0]), b = dbm_to_mw(p[1]);
            return std::log2(1.0 + a / (1.0 + coupling * b)) + std::log2(1.0 + b / (1.0 + coupling * a)) -
                   0.05 * (a + b);
        };
        const std::vector<double> start = {10.0, 10.0};
        const auto p = refine_tbs_powers(start, f, grid);
        CHECK(f(p) >= f(start));
        for (std::size_t n = 0; n < 2; ++n)
            for (double g : grid) {
                auto q = p;
                q[n] = g;
                CHECK(f(q) <= f(p));
            }
        double best = -1e18;
        for (double a : grid)
            for (double b : grid)
                best = std::max(best, f({a, b}));
        if (coupling == 0.0)
            CHECK(f(p) == best);
    }
}

TEST_CASE("interference verification")
{
    ScenarioConfig cfg;
    cfg.num_tbs = 1;
    cfg.tus_per_tbs = 2;
    cfg.num_laas = 2;
    cfg.num_carriers = 1;
    // LAA 1 sits close to TU 0
    PlannerCsi csi = testing::hand_csi(2, 2, 1, {-120, -120}, {-110, -110}, {-170, -170, -125, -170}, {0, 0});
    SchedulePlan plan = assemble_plan({{0, 1}}, {0, 0}, csi, cfg);

    PowerAllocation a = control_laa_powers(plan, csi, cfg);
    CHECK(a.p_laa_dbw[0] == 2.0);
    CHECK(a.p_laa_dbw[1] == -3.0);
    CHECK(a.violation_flags == std::vector<ViolationPair>{{1, 0}});
    CHECK(verify_interference(plan, a, csi, cfg.gamma_th_dbm()) == a.violation_flags);

    PlannerCsi quiet = testing::hand_csi(2, 2, 1, {-120, -120}, {-110, -110}, {-170, -170, -170, -170}, {0, 0});
    a = control_laa_powers(plan, quiet, cfg);
    CHECK(a.violation_flags.empty());
    CHECK(verify_interference(plan, a, quiet, cfg.gamma_th_dbm()).empty());

    // idle LAAs stay at the floor
    SchedulePlan idle = assemble_plan({}, {0, 0}, csi, cfg);
    a = control_laa_powers(idle, csi, cfg);
    CHECK(a.p_laa_dbw == std::vector<double>{-3.0, -3.0});
}

TEST_CASE("power control on generated topologies leaves no unflagged violation")
{
    ScenarioConfig cfg = testing::small_config();
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        Topology t = generate_topology(cfg, seed);
        PlannerCsi csi = build_planner_csi(t, cfg);
        std::vector<std::vector<std::size_t>> laas(cfg.num_carriers);
        for (std::size_t u = 0; u < cfg.num_laas; ++u)
            laas[u % cfg.num_carriers].push_back(u);
        std::vector<std::size_t> tus(csi.num_tus);
        for (std::size_t n = 0; n < csi.num_tus; ++n)
            tus[n] = (n * 7) % cfg.num_carriers;
        SchedulePlan plan = assemble_plan(laas, tus, csi, cfg);
        PowerAllocation a = control_laa_powers(plan, csi, cfg);
        const auto v = verify_interference(plan, a, csi, cfg.gamma_th_dbm());
        CHECK(v == a.violation_flags);
        // independent linear recheck
        for (const auto& [u, n] : plan.co_channel_pairs()) {
            const double rx_dbm = a.p_laa_dbw[u] + 30.0 + csi.interference_db(u, n);
            const bool flagged = std::binary_search(a.violation_flags.begin(), a.violation_flags.end(),
                                                    ViolationPair{u, n});
            if (!flagged)
                CHECK(rx_dbm <= cfg.gamma_th_dbm() + 1e-9);
        }
    }
}
