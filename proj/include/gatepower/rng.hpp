#pragma once

// Splittable deterministic generator. A stream is identified by (seed, index);
// identical identifiers produce bit-identical draw sequences on any platform
// with IEEE-754 doubles, which is what makes campaign results independent of
// how samples are distributed over workers.

#include <cstdint>
#include <cmath>
#include <utility>

namespace gatepower {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
} // namespace detail

struct RngState {
    std::uint64_t state = 0;

    static RngState from_seed(std::uint64_t seed) { return substream(seed, 0); }

    static RngState substream(std::uint64_t seed, std::uint64_t index) {
        RngState r;
        r.state = detail::mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                  detail::mix64((index + 1) * 0xD1B54A32D192ED03ULL);
        return r;
    }

    std::uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state);
    }

    // uniform in [0,1)
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Box-Muller pair of independent standard normals
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = 1.0 - next_uniform(); // (0,1]
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * 3.141592653589793 * u2),
                r * std::sin(2.0 * 3.141592653589793 * u2)};
    }
};

} // namespace gatepower
