#pragma once

#include <cstdint>
#include <random>

namespace colorist {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// A replayable random stream: mt19937_64 plus a draw counter, so the full
/// state is captured by (seed, draws). Each draw consumes exactly one engine
/// output, which keeps the sequence identical across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    static RngStream restore(std::uint64_t seed, std::uint64_t draws) {
        RngStream s(seed);
        s.engine_.discard(draws);
        s.draws_ = draws;
        return s;
    }

    std::uint64_t next() {
        ++draws_;
        return engine_();
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n). One draw; bias is below 2^-53 * n.
    int uniform_index(int n) { return static_cast<int>(uniform01() * n); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return draws_; }

    friend bool operator==(const RngStream& a, const RngStream& b) {
        return a.seed_ == b.seed_ && a.draws_ == b.draws_;
    }

private:
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace colorist
