#ifndef BALLGROW_RANDOM_HPP
#define BALLGROW_RANDOM_HPP

#include <cstdint>
#include <random>

namespace ballgrow {

/**
 * Named sub-streams. Two operations seeded with the same integer but using
 * different streams draw from unrelated sequences.
 */
enum class Stream : std::uint64_t {
    generate = 1,
    partition = 2,
    summary = 3,
    augment = 4,
    baseline = 5,
    solver = 6,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Seedable generator used by every stochastic operation.
 *
 * The engine is `std::mt19937_64`, whose output sequence is fixed by the
 * standard. Index and unit-interval draws are computed here rather than through
 * the `<random>` distributions (whose algorithms are implementation-defined),
 * so traces built from them are portable across standard libraries:
 *
 * - `uniform_index(n)`: draw `r` from the engine, reject while `r < 2^64 mod n`,
 *   return `r % n`.
 * - `uniform01()`: top 53 bits of one engine draw, scaled by `2^-53`.
 *
 * `normal()` goes through `std::normal_distribution` and is only reproducible
 * within one standard library.
 */
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed, Stream stream = Stream::generate)
        : engine_(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(stream) * 0x632be59bd9b4e019ULL)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). `n` must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

    /// Uniform real in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal(double mean, double stddev) {
        std::normal_distribution<double> dist(mean, stddev);
        return dist(engine_);
    }

private:
    engine_type engine_;
};

}  // namespace ballgrow

#endif  // BALLGROW_RANDOM_HPP
