#pragma once

#include <cstdint>
#include <random>

namespace arcmodel {

/// SplitMix64 finalizer. Derives independent stream seeds from (seed, index)
/// so that trial i sees the same randomness under any schedule.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// The single generator used for all randomness: mt19937_64 with draws made
/// by plain modular reduction, so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t index) : engine_(derive_seed(seed, index)) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound) up to a bias below 2^-40 for small bounds.
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

} // namespace arcmodel
