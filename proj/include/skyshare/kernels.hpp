#pragma once

// Monte Carlo rate kernels. Every kernel has a serial reference version and
// an OpenMP version; both draw from per-entity seeds, so their outputs are
// bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skyshare/fading.hpp"
#include "skyshare/rng.hpp"

namespace skyshare {

/// Fading draws shared by every rate of one TU: the faded signal power and
/// the faded background (noise plus cross-TBS interference) per sample.
struct TuFadingBank {
    std::vector<double> signal_mw;
    std::vector<double> background_mw;
    double free_rate = 0.0;  // rate with no LAA interference, same draws
};

struct BankSpec {
    double signal_mw = 0.0;
    std::vector<double> cross_mw;  // one entry per potential cross interferer; 0 = silent, still drawn
    double noise_mw = 0.0;
    FadingModel signal_fading = FadingModel::rayleigh();
    FadingModel cross_fading = FadingModel::rayleigh();
    std::size_t n_mc = 0;
    std::uint64_t seed = 0;
};

TuFadingBank make_bank(const BankSpec& spec);

/// Rates of a banked TU with one additional interferer at several mean
/// powers. The interferer's fading draws come from `seed` and are shared
/// across the powers, so the outputs are ordered like the powers.
void banked_rates(const TuFadingBank& bank, const FadingModel& fading, std::uint64_t seed,
                  std::span<const double> interference_mw, std::span<double> out);

/// Seed of the interferer draws for TU n under LAA u.
inline std::uint64_t pair_seed(std::uint64_t base, SeedStream stream, std::size_t n, std::size_t u)
{
    return derive_seed(base, stream, {n, u});
}

inline std::uint64_t bank_seed(std::uint64_t base, SeedStream stream, std::size_t n)
{
    return derive_seed(base, stream, {n});
}

/// Rate of every (LAA u, TU n) pair at each interference power level.
struct RateTableJob {
    const std::vector<TuFadingBank>* banks = nullptr;  // [n]
    std::span<const double> g_int;                     // [u * N + n], linear
    std::size_t num_laas = 0;
    std::size_t num_tus = 0;
    std::vector<double> powers_mw;  // LAA transmit powers
    FadingModel fading = FadingModel::rayleigh();
    std::uint64_t seed_base = 0;
    SeedStream stream = SeedStream::features;
};

/// Output layout: [(u * N + n) * P + p].
std::vector<double> rate_table_serial(const RateTableJob& job);
std::vector<double> rate_table_parallel(const RateTableJob& job, int threads);

/// One piece of a TU's serving time spent under a given LAA's interference.
struct TuTerm {
    std::size_t laa = 0;
    double weight = 0.0;           // fraction of T
    double interference_mw = 0.0;  // mean received LAA power
};

struct TuRateJob {
    const std::vector<TuFadingBank>* banks = nullptr;  // [n]
    std::vector<std::vector<TuTerm>> terms;            // [n]
    std::vector<double> free_weight;                   // [n] fraction of T with no LAA on air
    FadingModel fading = FadingModel::rayleigh();
    std::uint64_t seed_base = 0;
    SeedStream stream = SeedStream::eval_terrestrial;
};

/// Time-weighted rate of every TU (bit/s/Hz).
std::vector<double> tu_rates_serial(const TuRateJob& job);
std::vector<double> tu_rates_parallel(const TuRateJob& job, int threads);

}  // namespace skyshare
