#pragma once

#include <cstdint>
#include <cmath>

namespace tvpar {

/// xoshiro256++ with splitmix64 seeding. Self-contained so that seeded runs
/// are bit-reproducible across platforms and standard libraries (the
/// distributions in <random> are not pinned down by the standard).
///
/// Independent substreams are derived from (seed, key_a, key_b); the Monte
/// Carlo drivers key them by (psi index, path index) or (dgp index, rep
/// index) so results do not depend on thread scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { seed_state(seed); }

    /// Well-mixed 64-bit seed for the (key_a, key_b) substream of `seed`.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t key_a, std::uint64_t key_b) {
        std::uint64_t x = seed;
        x = splitmix64(x + 0x9E3779B97F4A7C15ULL * (key_a + 1));
        x = splitmix64(x + 0x9E3779B97F4A7C15ULL * (key_b + 1));
        return x;
    }

    static Rng substream(std::uint64_t seed, std::uint64_t key_a, std::uint64_t key_b) {
        return Rng(derive(seed, key_a, key_b));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform draw in (0,1].
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller, spare cached).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t splitmix64(std::uint64_t&& x) {
        std::uint64_t state = x;
        return splitmix64(state);
    }

    void seed_state(std::uint64_t seed) {
        std::uint64_t state = seed;
        for (auto& word : s_) word = splitmix64(state);
        // all-zero state is invalid for xoshiro; splitmix cannot emit four
        // consecutive zeros, but guard anyway
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tvpar
