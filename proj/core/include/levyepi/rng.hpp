#ifndef LEVYEPI_RNG_HPP
#define LEVYEPI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace levyepi {

// Stream roles for per-path randomness. A stream is fully determined by
// (base seed, path index, role), which lets coupled simulations share
// Brownian and jump streams by construction.
enum class StreamRole : std::uint64_t {
    B1 = 1,
    B2 = 2,
    B3 = 3,
    B4 = 4,
    JumpTimes = 5,
    JumpMarks = 6,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// xoshiro256++ with deterministic seeding; one instance per stream role.
class RngStream {
public:
    RngStream(std::uint64_t base_seed, std::uint64_t path_index, StreamRole role) {
        std::uint64_t key = base_seed;
        (void)detail::splitmix64(key);
        key ^= 0x6a09e667f3bcc908ULL + path_index * 0x9e3779b97f4a7c15ULL;
        (void)detail::splitmix64(key);
        key ^= static_cast<std::uint64_t>(role) * 0xd1342543de82ef95ULL;
        for (auto& word : state_) word = detail::splitmix64(key);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) {
            return (v << k) | (v >> (64 - k));
        };
        std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0, 1]; never returns 0 so log() is safe.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller, one value per two uniforms (no cached
    // partner, so the draw count per call is fixed).
    double gaussian() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double exponential(double rate) { return -std::log(uniform01()) / rate; }

private:
    std::uint64_t state_[4];
};

}  // namespace levyepi

#endif
