#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace g2lab {

// SplitMix64 finalizer; used both as the counter hash and for key mixing.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_name(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/**
 * Counter-based stream: output i is mix64(key + i * step). A stream is
 * fully determined by (seed, suite, trial), so trials can run in any order.
 */
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_(mix64(key)) {}
    CounterRng(std::uint64_t seed, std::string_view suite, std::uint64_t trial)
        : key_(mix64(mix64(seed ^ hash_name(suite)) + mix64(trial + 0x632BE59BD9B4E019ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix64(key_ + (counter_++) * 0xD1B54A32D192ED03ULL); }

    // Uniform in (0, 1).
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; deterministic across standard libraries.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace g2lab
