#pragma once

#include <cstdint>
#include <string_view>

namespace delib {

// SplitMix64 stream. One instance per run; replica streams are derived
// from the experiment seed with child(), never by sharing state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    // Unbiased integer in [0, n) via rejection. n must be > 0.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Independent stream derived from the original seed and an index.
    // Deterministic regardless of how much of this stream was consumed.
    Rng child(std::uint64_t index) const {
        return Rng(mix(seed_ ^ mix(index + 0x632BE59BD9B4E019ULL)));
    }

    // Named stream; name is hashed (FNV-1a) into a child index.
    Rng child(std::string_view name) const {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : name) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return child(h);
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace delib
