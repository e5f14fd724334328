#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace heterovar {

//! splitmix64 step; used to derive well-separated stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

//! Seed for the stream identified by (master, index, salt). Every consumer
//! of randomness in the library derives its stream through this function,
//! which is what makes results independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                 std::uint64_t salt = 0) {
    std::uint64_t state = master;
    (void)splitmix64(state);
    state ^= 0x9E3779B97F4A7C15ull * (index + 1);
    (void)splitmix64(state);
    state ^= 0xD1B54A32D192ED03ull * (salt + 1);
    return splitmix64(state);
}

//! Deterministic random stream: mt19937_64 plus explicit samplers, so the
//! produced sequences do not depend on the standard library's distribution
//! implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    //! Uniform on (0, 1], 53-bit resolution.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }

    //! Standard normal via Box-Muller; the sine partner is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

    //! Symmetric two-point noise: +1 or -1 with equal probability.
    //! Mean 0, variance 1, fourth moment 1.
    double two_point() { return (engine_() >> 63) ? 1.0 : -1.0; }

    //! Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace heterovar
