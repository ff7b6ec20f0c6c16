#pragma once

#include <cstdint>
#include <vector>

namespace qgol {

// SplitMix64. Pure 64-bit integer arithmetic, so the stream is identical on
// every conforming platform; that is the whole reason it is used here instead
// of std::mt19937_64 (whose seeding/real mappings are not pinned by the
// standard library across implementations in a way we want to rely on).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % n;
    }

    // Uniform real in [0, 1). binary64: top 53 bits / 2^53; binary32: top 24
    // bits / 2^24. Documented bit-to-real mapping, part of the manifest contract.
    double real64() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    float  real32() { return static_cast<float>(next() >> 40) * 0x1.0p-24f; }

    template <typename T> T real();

    // First k of a random permutation of {0,..,n-1} (partial Fisher-Yates).
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k) {
        std::vector<std::uint64_t> idx(n);
        for (std::uint64_t i = 0; i < n; ++i) idx[i] = i;
        if (k > n) k = n;
        for (std::uint64_t i = 0; i < k; ++i) {
            std::uint64_t j = i + below(n - i);
            std::uint64_t t = idx[i]; idx[i] = idx[j]; idx[j] = t;
        }
        idx.resize(k);
        return idx;
    }

private:
    std::uint64_t state_;
};

template <> inline double SplitMix64::real<double>() { return real64(); }
template <> inline float  SplitMix64::real<float>()  { return real32(); }

inline const char* rng_name() { return "splitmix64"; }

} // namespace qgol
