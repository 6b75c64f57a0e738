#pragma once

#include <cstdint>
#include <vector>

namespace scldpcl {

// SplitMix64 (Steele/Lea/Flood). Chosen because the output sequence is fixed
// by the algorithm itself, so seeded runs reproduce bit-identically across
// platforms and standard libraries. Pinned by a golden-output test.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform in [0,n) via rejection.
    uint64_t next_below(uint64_t n) {
        const uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
        const uint64_t lim = UINT64_MAX - rem;
        uint64_t v = next();
        while (v > lim) v = next();
        return v % n;
    }

private:
    uint64_t state_;
};

// Independent sub-stream seed for (master, stream). One extra mix step keeps
// neighboring stream indices uncorrelated.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    SplitMix64 g(master ^ (stream * 0xA3EC647659359ACDULL + 0x9E6C63D0876A9A23ULL));
    return g.next();
}

// Fisher-Yates with the fixed generator above.
inline void shuffle(std::vector<int>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace scldpcl
