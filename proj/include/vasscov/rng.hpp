// rng.hpp -- deterministic random source for generators and suites.
//
// std::uniform_int_distribution's output sequence is implementation
// defined, so suites seeded identically could diverge across standard
// libraries.  We keep mt19937_64 as the engine but draw bounded values
// with an explicit rejection loop, which pins the byte-for-byte output.

#ifndef VASSCOV_RNG_HPP
#define VASSCOV_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace vasscov {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace vasscov

#endif  // VASSCOV_RNG_HPP
