#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace skyshare {

using Engine = std::mt19937_64;

/// Stage tags mixed into derived seeds so that independent stages never
/// share a random stream.
enum class SeedStream : std::uint64_t {
    topology = 0x01,
    features = 0x02,
    planner = 0x03,
    eval_terrestrial = 0x04,
    eval_satellite = 0x05,
    clustering = 0x06,
    randscheme = 0x07,
    fading = 0x08,
    radiomap_verify = 0x09,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a seed path (master -> topology -> stage -> entity).
/// Every random draw in the simulator flows from one of these, which is what
/// makes results independent of thread scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t p : path)
        h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t base, SeedStream stream,
                                    std::initializer_list<std::uint64_t> path = {}) noexcept
{
    std::uint64_t h = derive_seed(base, {static_cast<std::uint64_t>(stream)});
    return path.size() == 0 ? h : derive_seed(h, path);
}

}  // namespace skyshare
