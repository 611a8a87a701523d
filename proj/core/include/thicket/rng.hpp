#pragma once

#include <cstdint>
#include <random>

namespace thicket {

/// Stream derivation: maps (master seed, stream index) to an independent
/// engine seed. splitmix64 finalizer, so nearby indices decorrelate.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic RNG wrapper. mt19937_64 output is pinned by the standard and
/// all distributions here are hand-rolled, so identical seeds give identical
/// streams on every platform and compiler.
class rng {
public:
    explicit rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    int below(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(eng_()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 eng_;
};

} // namespace thicket
