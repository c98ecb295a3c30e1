#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace dgc {

// SplitMix64 step. Used both as a stream generator and to derive child seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic seed derivation: children of the same parent with different
// tags are independent streams. Order of tags matters.
inline std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = base;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t t : tags) {
        s ^= t + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
        out = splitmix64(s);
    }
    return out;
}

// Counter-based deterministic stream. Produces identical sequences for a
// given seed on every platform (no std::random distribution semantics).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Rejection-free modulo is fine here:
    // bounds in this project are tiny relative to 2^64.
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace dgc
