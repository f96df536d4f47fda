#include <doctest.h>

#include <cmath>
#include <random>

#include "skyshare/channel.hpp"
#include "skyshare/kernels.hpp"
#include "skyshare/units.hpp"

using namespace skyshare;

namespace {

std::vector<TuFadingBank> random_banks(std::size_t N, std::size_t n_mc, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> db(-125.0, -95.0);
    std::vector<TuFadingBank> banks;
    for (std::size_t n = 0; n < N; ++n) {
        BankSpec spec;
        spec.signal_mw = db_to_linear(db(rng));
        spec.cross_mw = {db_to_linear(db(rng) - 10), db_to_linear(db(rng) - 10), 0.0};
        spec.noise_mw = dbm_to_mw(-114.0);
        spec.n_mc = n_mc;
        spec.seed = bank_seed(seed, SeedStream::features, n);
        banks.push_back(make_bank(spec));
    }
    return banks;
}

}  // namespace

TEST_CASE("bank free rate equals the direct Monte Carlo estimate")
{
    BankSpec spec;
    spec.signal_mw = db_to_linear(-100.0);
    spec.cross_mw = {db_to_linear(-118.0), db_to_linear(-121.0)};
    spec.noise_mw = dbm_to_mw(-114.0);
    spec.n_mc = 3000;
    spec.seed = 99;
    const TuFadingBank bank = make_bank(spec);

    std::vector<Interferer> cross;
    for (double c : spec.cross_mw)
        cross.push_back({c, 0.0, spec.cross_fading});
    const double direct = expected_rate(spec.signal_mw, 0.0, cross, spec.signal_fading, -114.0, spec.n_mc, spec.seed);
    CHECK(bank.free_rate == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("banked rates under deterministic fading match the SINR formula")
{
    BankSpec spec;
    spec.signal_mw = db_to_linear(-108.0);
    spec.noise_mw = dbm_to_mw(-114.0);
    spec.signal_fading = FadingModel::deterministic();
    spec.n_mc = 5;
    spec.seed = 1;
    const TuFadingBank bank = make_bank(spec);
    const double levels[3] = {0.0, db_to_linear(-120.0), db_to_linear(-110.0)};
    double out[3];
    banked_rates(bank, FadingModel::deterministic(), 3, levels, out);
    for (int p = 0; p < 3; ++p)
        CHECK(out[p] == doctest::Approx(std::log2(1.0 + db_to_linear(-108.0) / (dbm_to_mw(-114.0) + levels[p]))));
    CHECK(out[0] == doctest::Approx(bank.free_rate));
}

TEST_CASE("shared interferer draws keep rates ordered by power")
{
    auto banks = random_banks(20, 200, 4);
    std::vector<double> levels;
    for (double db = -140; db <= -90; db += 2.5)
        levels.push_back(db_to_linear(db));
    std::vector<double> out(levels.size());
    for (const auto& b : banks) {
        banked_rates(b, FadingModel::rayleigh(), 12, levels, out);
        for (std::size_t p = 1; p < out.size(); ++p)
            CHECK(out[p] <= out[p - 1]);
        CHECK(out[0] <= b.free_rate);
    }
}

TEST_CASE("rate table: serial and parallel are bit-identical")
{
    const std::size_t U = 13, N = 37;
    auto banks = random_banks(N, 150, 8);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> db(-160.0, -110.0);
    std::vector<double> g(U * N);
    for (double& x : g)
        x = db_to_linear(db(rng));
    RateTableJob job;
    job.banks = &banks;
    job.g_int = g;
    job.num_laas = U;
    job.num_tus = N;
    job.powers_mw = {dbw_to_mw(2.0), dbw_to_mw(-3.0)};
    job.seed_base = 77;
    const auto serial = rate_table_serial(job);
    REQUIRE(serial.size() == U * N * 2);
    for (int threads : {1, 2, 3, 8})
        CHECK(rate_table_parallel(job, threads) == serial);
    for (std::size_t i = 0; i < U * N; ++i)
        CHECK(serial[2 * i] <= serial[2 * i + 1]);
}

TEST_CASE("TU rates: serial and parallel are bit-identical")
{
    const std::size_t N = 41;
    auto banks = random_banks(N, 120, 6);
    TuRateJob job;
    job.banks = &banks;
    job.terms.resize(N);
    job.free_weight.assign(N, 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0, 1);
    for (std::size_t n = 0; n < N; ++n) {
        double left = 1.0;
        for (std::size_t u = 0; u < n % 4; ++u) {
            const double w = left * unit(rng);
            job.terms[n].push_back({u * 3 + n % 2, w, db_to_linear(-125.0 + 20.0 * unit(rng))});
            left -= w;
        }
        job.free_weight[n] = left;
    }
    job.seed_base = 5;
    const auto serial = tu_rates_serial(job);
    for (int threads : {1, 2, 5, 8})
        CHECK(tu_rates_parallel(job, threads) == serial);
    // pure free time gives the free rate
    for (std::size_t n = 0; n < N; ++n)
        if (job.terms[n].empty())
            CHECK(serial[n] == doctest::Approx(banks[n].free_rate));
}
