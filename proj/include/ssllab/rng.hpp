#pragma once

#include <cstdint>

namespace ssllab {

// 64-bit finalizer (splitmix64 avalanche). Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Derives an independent child key from (key, index). Used everywhere a
// stream has to be reproducible regardless of evaluation order: datasets
// key per point, Monte Carlo keys per (point, sample), experiments key
// per seed index. Adding more indices never perturbs existing streams.
constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) {
    return mix64(key + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Domain tags keep unrelated stream families apart even when the numeric
// indices coincide.
enum class StreamTag : std::uint64_t {
    Dataset    = 0x01,
    AugPair    = 0x02,
    Init       = 0x03,
    TrainIter  = 0x04,
    SeedFanout = 0x05,
    Scratch    = 0x06,
};

constexpr std::uint64_t tagged_key(std::uint64_t key, StreamTag tag) {
    return derive_key(key, static_cast<std::uint64_t>(tag) ^ 0xA5A5A5A5A5A5A5A5ULL);
}

// Counter-free splitmix64 stream with uniform and normal variates.
// Normal generation uses a 128-layer ziggurat over exp(-x^2/2).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_double_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    // Unbiased-in-practice bounded draw (Lemire multiply-shift; bias < bound/2^64).
    std::uint64_t uniform_u64(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    // Standard normal variate.
    double next_normal();

private:
    double normal_tail(bool negative);

    std::uint64_t state_;
};

}  // namespace ssllab
