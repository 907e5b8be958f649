#ifndef wpa_rng_hpp
#define wpa_rng_hpp

#include <cstddef>
#include <cstdint>
#include <random>

namespace wpa {

// SplitMix64 finalizer, used to derive independent engine seeds
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/*
 * std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream)).
 * Real and integer draws are implemented here rather than through the
 * <random> distributions, whose output is implementation-defined, so a
 * (seed, stream) pair produces the same sequence on every standard library.
 */
class Rng {
public:
    // streams used by the trainer
    static constexpr std::uint64_t init_stream = 1;
    static constexpr std::uint64_t train_stream = 2;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(seed ^ splitmix64(stream))) {}

    std::uint64_t next() { return engine_(); }

    // uniform on [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on [lo, hi]; hi is reachable only through rounding
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n), unbiased (Lemire's multiply-shift with rejection)
    std::size_t below(std::size_t n) {
        const std::uint64_t range = n;
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * range;
        auto low = static_cast<std::uint64_t>(m);
        if (low < range) {
            const std::uint64_t threshold = (0 - range) % range;
            while (low < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * range;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::size_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}

#endif /* wpa_rng_hpp */
