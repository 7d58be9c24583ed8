#ifndef AQMSIM_RNG_HPP
#define AQMSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace aqmsim {

/// splitmix64 step, used only for seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent mt19937_64 stream derived from a run seed and a stream id.
/// Every consumer of randomness owns one stream so that adding or removing
/// a consumer never perturbs the draws seen by the others.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_id) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream_id));
}

/// Uniform draw in (0, 1) built from the generator's top 53 bits.
/// Defined explicitly (rather than via std::uniform_real_distribution)
/// so traces are reproducible across standard library implementations.
inline double uniform01(std::mt19937_64& g) {
    double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    if (u <= 0.0) u = 0x1.0p-53;
    return u;
}

}  // namespace aqmsim

#endif  // AQMSIM_RNG_HPP
