#include "skyshare/kernels.hpp"

#include <cmath>

namespace skyshare {

TuFadingBank make_bank(const BankSpec& spec)
{
    TuFadingBank bank;
    bank.signal_mw.resize(spec.n_mc);
    bank.background_mw.resize(spec.n_mc);
    Engine engine(spec.seed);
    FadingSampler signal(spec.signal_fading);
    FadingSampler cross(spec.cross_fading);
    double acc = 0.0;
    for (std::size_t s = 0; s < spec.n_mc; ++s) {
        const double sig = spec.signal_mw * signal(engine);
        double bg = spec.noise_mw;
        for (double c : spec.cross_mw) {
            const double h = cross(engine);
            bg += c * h;
        }
        bank.signal_mw[s] = sig;
        bank.background_mw[s] = bg;
        acc += std::log2(1.0 + sig / bg);
    }
    bank.free_rate = spec.n_mc ? acc / static_cast<double>(spec.n_mc) : 0.0;
    return bank;
}

void banked_rates(const TuFadingBank& bank, const FadingModel& fading, std::uint64_t seed,
                  std::span<const double> interference_mw, std::span<double> out)
{
    const std::size_t n_mc = bank.signal_mw.size();
    const std::size_t levels = interference_mw.size();
    for (std::size_t p = 0; p < levels; ++p)
        out[p] = 0.0;
    if (n_mc == 0)
        return;
    Engine engine(seed);
    FadingSampler sampler(fading);
    for (std::size_t s = 0; s < n_mc; ++s) {
        const double x = sampler(engine);
        for (std::size_t p = 0; p < levels; ++p)
            out[p] += std::log2(1.0 + bank.signal_mw[s] / (bank.background_mw[s] + interference_mw[p] * x));
    }
    for (std::size_t p = 0; p < levels; ++p)
        out[p] /= static_cast<double>(n_mc);
}

namespace {

void rate_table_row(const RateTableJob& job, std::size_t u, std::vector<double>& out, std::vector<double>& levels)
{
    const std::size_t P = job.powers_mw.size();
    for (std::size_t n = 0; n < job.num_tus; ++n) {
        const double g = job.g_int[u * job.num_tus + n];
        for (std::size_t p = 0; p < P; ++p)
            levels[p] = job.powers_mw[p] * g;
        banked_rates((*job.banks)[n], job.fading, pair_seed(job.seed_base, job.stream, n, u), levels,
                     std::span<double>(out.data() + (u * job.num_tus + n) * P, P));
    }
}

double tu_rate(const TuRateJob& job, std::size_t n)
{
    const TuFadingBank& bank = (*job.banks)[n];
    double total = job.free_weight[n] * bank.free_rate;
    for (const TuTerm& t : job.terms[n]) {
        double r = 0.0;
        banked_rates(bank, job.fading, pair_seed(job.seed_base, job.stream, n, t.laa),
                     std::span<const double>(&t.interference_mw, 1), std::span<double>(&r, 1));
        total += t.weight * r;
    }
    return total;
}

}  // namespace

std::vector<double> rate_table_serial(const RateTableJob& job)
{
    std::vector<double> out(job.num_laas * job.num_tus * job.powers_mw.size());
    std::vector<double> levels(job.powers_mw.size());
    for (std::size_t u = 0; u < job.num_laas; ++u)
        rate_table_row(job, u, out, levels);
    return out;
}

std::vector<double> rate_table_parallel(const RateTableJob& job, int threads)
{
    std::vector<double> out(job.num_laas * job.num_tus * job.powers_mw.size());
    const auto U = static_cast<long long>(job.num_laas);
#pragma omp parallel num_threads(threads > 0 ? threads : 1)
    {
        std::vector<double> levels(job.powers_mw.size());
#pragma omp for schedule(dynamic, 1)
        for (long long u = 0; u < U; ++u)
            rate_table_row(job, static_cast<std::size_t>(u), out, levels);
    }
    return out;
}

std::vector<double> tu_rates_serial(const TuRateJob& job)
{
    std::vector<double> out(job.terms.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = tu_rate(job, n);
    return out;
}

std::vector<double> tu_rates_parallel(const TuRateJob& job, int threads)
{
    std::vector<double> out(job.terms.size());
    const auto N = static_cast<long long>(out.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads > 0 ? threads : 1)
    for (long long n = 0; n < N; ++n)
        out[static_cast<std::size_t>(n)] = tu_rate(job, static_cast<std::size_t>(n));
    return out;
}

}  // namespace skyshare
