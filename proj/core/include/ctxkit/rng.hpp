#pragma once

#include <cstdint>

namespace ctxkit {

/// splitmix64 output for the given state; used for seed expansion and for
/// deriving independent per-sample seeds. Counter-based, so derived seeds
/// can be computed out of order.
inline std::uint64_t splitmix64_at(std::uint64_t state, std::uint64_t step) {
    std::uint64_t z = state + 0x9e3779b97f4a7c15ULL * (step + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-sample seed derivation: seed_i = splitmix64(seed, i).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_at(seed, index);
}

/// xoshiro256** — portable, seedable 64-bit generator. State is expanded
/// from the seed with splitmix64, the reference seeding procedure. The
/// output sequence for a given seed is fixed across platforms, which keeps
/// golden-value tests and serialized results stable.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        for (int i = 0; i < 4; ++i) state_[i] = splitmix64_at(seed, static_cast<std::uint64_t>(i));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace ctxkit
