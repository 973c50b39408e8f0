#pragma once

#include <cstdint>
#include <vector>

namespace kl {

/* SplitMix64. Chosen over std::mt19937_64 because the standard distributions
 * are implementation-defined; this generator produces the same stream on every
 * platform, which the seeded-determinism guarantees rely on. */
class rng64 {
public:
    explicit rng64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /* Uniform on [0, n), n >= 1. Rejection keeps it exactly uniform. */
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    /* Uniform on (0, 1); never returns 0, so log() is safe. */
    double unit_open() {
        std::uint64_t x;
        do {
            x = next();
        } while (x == 0);
        return static_cast<double>(x) * 0x1p-64 + 0x1p-65;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

/* Decorrelates (seed, index) pairs so each Monte Carlo sample can own an
 * independent substream; totals then do not depend on how samples are sharded
 * across workers. */
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    rng64 g(seed ^ (index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    return g.next();
}

constexpr std::uint64_t default_seed = 0x6b6c626970ull; /* "klbip" */

} // namespace kl
