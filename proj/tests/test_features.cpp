#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "skyshare/errors.hpp"
#include "skyshare/features.hpp"
#include "skyshare/units.hpp"
#include "support.hpp"

using namespace skyshare;

namespace {

// Two TBSs with two TUs each, three LAAs; gains in dB.
PlannerCsi toy_csi(double int_scale_db = 0.0)
{
    std::vector<double> g_int = {-140, -150, -160, -135,   // LAA 0
                                 -155, -131, -145, -150,   // LAA 1
                                 -140, -150, -160, -135};  // LAA 2 sits where LAA 0 sits
    for (double& g : g_int)
        g += int_scale_db;
    return testing::hand_csi(3, 4, 2, {-120, -121, -119}, {-110, -112, -115, -108}, g_int, {0, 0, 1, 1}, -135.0);
}

}  // namespace

TEST_CASE("L1 distance")
{
    FeatureVector a{0, {1, 2}}, b{1, {3, 1}};
    CHECK(feature_distance(a, b) == 3.0);
    CHECK(feature_distance(a, a) == 0.0);
    FeatureVector c{2, {1, 2, 3}};
    CHECK_THROWS_AS(feature_distance(a, c), FeatureError);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> v(0, 5);
    for (int t = 0; t < 200; ++t) {
        FeatureVector x, y, z;
        for (int i = 0; i < 16; ++i) {
            x.values.push_back(v(rng));
            y.values.push_back(v(rng));
            z.values.push_back(v(rng));
        }
        CHECK(feature_distance(x, y) >= 0.0);
        CHECK(feature_distance(x, y) == feature_distance(y, x));
        CHECK(feature_distance(x, z) <= feature_distance(x, y) + feature_distance(y, z) + 1e-12);
        CHECK(feature_distance(x, y) > 0.0);
    }
}

TEST_CASE("hand SINR case under deterministic fading")
{
    ScenarioConfig cfg = testing::deterministic_fading(ScenarioConfig{});
    cfg.tbs_power_dbm = 10.0;
    cfg.cross_tbs_interference = false;
    // S = 10 dBm - 118 dB = -108 dBm, I = 27 dBm - 147 dB = -120 dBm
    PlannerCsi csi = testing::hand_csi(1, 1, 1, {-120}, {-118}, {-147}, {0});
    const double rate = degraded_rate(0, 0, -3.0, csi, cfg);
    const double oracle = std::log2(1.0 + std::pow(10.0, 0.6) / (1.0 + std::pow(10.0, -0.6)));
    CHECK(rate == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(rate == doctest::Approx(2.064).epsilon(1e-3));
}

TEST_CASE("degraded rate limits and monotonicity")
{
    ScenarioConfig cfg;
    cfg.feature_mc_samples = 500;
    PlannerCsi csi = toy_csi();
    PlannerCsi silent = toy_csi(-900.0);
    for (std::size_t n = 0; n < 4; ++n) {
        const TuFadingBank bank = planner_bank(n, silent, cfg);
        CHECK(degraded_rate(n, 0, 2.0, silent, cfg) == doctest::Approx(bank.free_rate).epsilon(1e-12));
        for (std::size_t u = 0; u < 3; ++u)
            CHECK(degraded_rate(n, u, -3.0, csi, cfg) >= degraded_rate(n, u, 2.0, csi, cfg));
    }
    CHECK(exceeds_threshold(1, 1, 2.0, csi, cfg));       // 32 dBm - 131 dB = -99 dBm
    CHECK_FALSE(exceeds_threshold(2, 0, -3.0, csi, cfg)); // 27 dBm - 160 dB = -133 dBm
}

TEST_CASE("feature vectors")
{
    ScenarioConfig cfg;
    cfg.feature_mc_samples = 300;
    PlannerCsi csi = toy_csi();
    PlannerRates rates(csi, cfg);

    FeatureSet set = build_feature_set(rates, false);
    REQUIRE(set.vectors.size() == 3);
    for (std::size_t u = 0; u < 3; ++u) {
        const FeatureVector f = build_feature_vector(u, csi, cfg);
        CHECK(f.laa_index == u);
        CHECK(f.values == set.vectors[u].values);
        REQUIRE(f.values.size() == 8);
        for (std::size_t n = 0; n < 4; ++n) {
            CHECK(f.values[2 * n] <= f.values[2 * n + 1]);
            CHECK(f.values[2 * n + 1] <= rates.interference_free(n));
            CHECK(set.rate_at_max[u * 4 + n] == doctest::Approx(rates.rate(n, u, 2.0)).epsilon(1e-14));
            CHECK(set.rate_at_min[u * 4 + n] == doctest::Approx(rates.rate(n, u, -3.0)).epsilon(1e-14));
        }
    }
    // LAA 1 at max power breaks gamma_th at TU 1: the penalty zeroes that entry only
    CHECK(set.vectors[1].values[2] == 0.0);
    CHECK(set.rate_at_max[1 * 4 + 1] > 0.0);

    // co-located LAAs 0 and 2: identical CSI rows give identical sketches up to the
    // per-pair Monte Carlo streams, and exactly identical ones without fading
    ScenarioConfig det = testing::deterministic_fading(cfg);
    CHECK(build_feature_vector(0, csi, det).values == build_feature_vector(2, csi, det).values);
    CHECK(feature_distance(set.vectors[0], set.vectors[2]) < feature_distance(set.vectors[0], set.vectors[1]));

    // silent LAA: both entries of each pair equal the free rate
    PlannerCsi silent = toy_csi(-900.0);
    PlannerRates quiet(silent, cfg);
    const FeatureVector f = build_feature_vector(0, silent, cfg);
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(f.values[2 * n] == doctest::Approx(quiet.interference_free(n)).epsilon(1e-12));
        CHECK(f.values[2 * n + 1] == doctest::Approx(quiet.interference_free(n)).epsilon(1e-12));
    }

    // serial and parallel builds agree bit for bit
    CHECK(build_feature_set(rates, true, 4).vectors[1].values == set.vectors[1].values);
}

TEST_CASE("stronger coupling moves the sketch away from the silent one")
{
    ScenarioConfig cfg = testing::deterministic_fading(ScenarioConfig{});
    cfg.qos_penalty = false;
    PlannerCsi silent = toy_csi(-900.0);
    const FeatureVector zero = build_feature_vector(0, silent, cfg);
    double last = -1.0;
    for (double scale_db = -20.0; scale_db <= 30.0; scale_db += 10.0) {
        const double d = feature_distance(build_feature_vector(0, toy_csi(scale_db), cfg), zero);
        CHECK(d >= last);
        last = d;
    }
    CHECK(last > 0.0);
}

TEST_CASE("relabelling TUs permutes entries pairwise")
{
    ScenarioConfig cfg = testing::deterministic_fading(ScenarioConfig{});
    PlannerCsi csi = toy_csi();
    const std::size_t perm[4] = {2, 0, 3, 1};  // new index of old TU n
    PlannerCsi p = csi;
    for (std::size_t n = 0; n < 4; ++n) {
        p.g_ter_db[perm[n]] = csi.g_ter_db[n];
        p.serving_tbs[perm[n]] = csi.serving_tbs[n];
        for (std::size_t u = 0; u < 3; ++u)
            p.g_int_db[u * 4 + perm[n]] = csi.g_int_db[u * 4 + n];
        for (std::size_t m = 0; m < 2; ++m)
            p.g_cross_db[m * 4 + perm[n]] = csi.g_cross_db[m * 4 + n];
    }
    p.refresh_linear();
    std::vector<FeatureVector> a, b;
    for (std::size_t u = 0; u < 3; ++u) {
        a.push_back(build_feature_vector(u, csi, cfg));
        b.push_back(build_feature_vector(u, p, cfg));
        for (std::size_t n = 0; n < 4; ++n) {
            CHECK(b[u].values[2 * perm[n]] == a[u].values[2 * n]);
            CHECK(b[u].values[2 * perm[n] + 1] == a[u].values[2 * n + 1]);
        }
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(feature_distance(a[i], a[j]) == doctest::Approx(feature_distance(b[i], b[j])).epsilon(1e-14));
}

TEST_CASE("default scenario sketch length")
{
    ScenarioConfig cfg;
    cfg.feature_mc_samples = 20;
    Topology t = generate_topology(cfg, 1);
    PlannerCsi csi = build_planner_csi(t, cfg);
    const FeatureVector f = build_feature_vector(5, csi, cfg);
    CHECK(f.values.size() == 1344);
    CHECK(planner_cross_tbs(0, csi, cfg).size() == 27);
    ScenarioConfig partial = cfg;
    partial.reuse = ReuseMode::partial;
    Topology tp = generate_topology(partial, 1);
    PlannerCsi cp = build_planner_csi(tp, partial);
    for (std::size_t m : planner_cross_tbs(0, cp, partial))
        CHECK(cp.tbs_color[m] == cp.tbs_color[cp.serving_tbs[0]]);
    CHECK_THROWS_AS(build_feature_vector(96, csi, cfg), FeatureError);
}
