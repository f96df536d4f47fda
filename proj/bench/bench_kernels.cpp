// Serial reference vs OpenMP kernels on a case-study-sized scenario.
// Thread count is the benchmark argument; serial runs ignore it.
#include <benchmark/benchmark.h>

#include <memory>

#include "skyshare/features.hpp"
#include "skyshare/kernels.hpp"
#include "skyshare/simulator.hpp"
#include "skyshare/units.hpp"

using namespace skyshare;

namespace {

struct Fixture {
    ScenarioConfig cfg;
    Scenario sc;
    std::unique_ptr<PlannerRates> rates;
    RateTableJob table;
    TuRateJob tu;

    Fixture()
    {
        sc = make_scenario(cfg, topology_seed(cfg.master_seed, 0));
        rates = std::make_unique<PlannerRates>(sc.csi, cfg, 1);
        table.banks = &rates->banks();
        table.g_int = sc.csi.g_int;
        table.num_laas = sc.csi.num_laas;
        table.num_tus = sc.csi.num_tus;
        table.powers_mw = {dbw_to_mw(cfg.power.laa_max_dbw), dbw_to_mw(cfg.power.laa_min_dbw)};
        table.fading = cfg.interference_fading;
        table.seed_base = sc.csi.scenario_seed;

        // every TU hears 8 LAAs for an eighth of the interval each
        const std::size_t N = sc.csi.num_tus;
        tu.banks = &rates->banks();
        tu.terms.resize(N);
        tu.free_weight.assign(N, 0.0);
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t j = 0; j < 8; ++j) {
                const std::size_t u = (n + 12 * j) % sc.csi.num_laas;
                tu.terms[n].push_back({u, 0.125, dbw_to_mw(-3.0) * sc.csi.interference(u, n)});
            }
        tu.fading = cfg.interference_fading;
        tu.seed_base = sc.csi.scenario_seed;
    }
};

Fixture& fixture()
{
    static Fixture f;
    return f;
}

void BM_rate_table_serial(benchmark::State& state)
{
    auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(rate_table_serial(f.table));
}

void BM_rate_table_parallel(benchmark::State& state)
{
    auto& f = fixture();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(rate_table_parallel(f.table, threads));
}

void BM_tu_rates_serial(benchmark::State& state)
{
    auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(tu_rates_serial(f.tu));
}

void BM_tu_rates_parallel(benchmark::State& state)
{
    auto& f = fixture();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tu_rates_parallel(f.tu, threads));
}

}  // namespace

BENCHMARK(BM_rate_table_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rate_table_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_tu_rates_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_tu_rates_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
