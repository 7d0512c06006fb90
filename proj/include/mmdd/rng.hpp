#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mmdd {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent deterministic stream id derived from a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

// Deterministic RNG. The raw mt19937_64 sequence is pinned by the standard;
// the uniform/normal transforms live here because the std distribution
// objects are implementation-defined and would break byte-exact replays.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // (0, 1]; safe as a log() argument.
    double uniform01_open() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) via rejection.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = n == 0 ? 0 : UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= bound) v = engine_();
        return static_cast<std::size_t>(v % n);
    }

    // Standard normal via Box-Muller; consumes exactly two draws.
    double normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::vector<double> normal_vec(std::size_t n) {
        std::vector<double> out(n);
        for (auto& v : out) v = normal();
        return out;
    }

    // In-place Fisher-Yates; std::shuffle draw order is not pinned by the standard.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mmdd
