#include "lda/math/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "lda/math/normal.hpp"

namespace lda {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    // Expand the seed through SplitMix64 so that nearby seeds give
    // unrelated engine states.
    std::uint64_t s = seed;
    std::seed_seq seq{
        static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
        static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
        static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
        static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s))};
    engine_.seed(seq);
}

Rng Rng::substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    for (std::uint64_t id : path) {
        s = mixed ^ (id + 0x9e3779b97f4a7c15ULL + (mixed << 6) + (mixed >> 2));
        mixed = splitmix64(s);
    }
    return Rng(mixed);
}

double Rng::normal() { return norm_quantile(uniform()); }

std::uint64_t Rng::poisson(double lambda) {
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw std::domain_error("poisson: rate must be finite and nonnegative");
    // Knuth inversion, splitting large rates into chunks so exp(-chunk)
    // stays representable. Additivity of independent Poisson counts makes
    // the chunked sum exact in distribution.
    std::uint64_t total = 0;
    while (lambda > 0.0) {
        const double chunk = lambda > 500.0 ? 500.0 : lambda;
        lambda -= chunk;
        const double limit = std::exp(-chunk);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        total += k;
    }
    return total;
}

}  // namespace lda
