#ifndef FFP_RNG_HPP
#define FFP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ffp {

// Deterministic random source. All draws are built from raw mt19937_64
// output (whose sequence the standard specifies exactly), not from
// std::uniform_*_distribution, so identical seeds give identical streams
// on every platform and standard library.
//
// `stream` separates independent generators that share one user seed
// (e.g. weight init vs. shuffling) without overlapping sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(mix(seed, stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Uniform integer in [lo, hi], both inclusive. Rejection sampling,
    // so there is no modulo bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        const std::uint64_t limit = span == 0
            ? ~std::uint64_t{0}
            : ~std::uint64_t{0} - (~std::uint64_t{0} % span + 1u) % span;
        std::uint64_t r = engine_();
        while (r > limit) r = engine_();
        return span == 0 ? static_cast<std::int64_t>(r)
                         : lo + static_cast<std::int64_t>(r % span);
    }

    // Gaussian via Box-Muller; the spare draw is kept for the next call.
    double gaussian(double mean, double sd) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + sd * spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return mean + sd * r * std::cos(two_pi * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        // One splitmix64 round over (seed, stream) to decorrelate streams.
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1u);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Fisher-Yates shuffle driven by Rng (std::shuffle's draw pattern is
// implementation-defined, which would break cross-platform determinism).
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace ffp

#endif
