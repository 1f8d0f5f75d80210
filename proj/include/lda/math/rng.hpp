#ifndef LDA_MATH_RNG_HPP
#define LDA_MATH_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lda {

/// Deterministic random source. All draws are pinned to explicit algorithms
/// (53-bit uniforms, inverse-CDF normals, chunked inversion Poisson) so that
/// a given seed reproduces the same stream on every run, and substreams can
/// be derived from (seed, path) labels for order-independent parallel work.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Derives an independent stream keyed by seed and a label path,
    /// e.g. Rng::substream(seed, {orc_index, replicate, chunk}).
    static Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the inverse CDF (one uniform per draw).
    double normal();

    /// Poisson count at rate lambda >= 0.
    std::uint64_t poisson(double lambda);

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 step; used for seed mixing and hashing label paths.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace lda

#endif
