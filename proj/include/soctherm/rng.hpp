/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace soctherm {

// Deterministic 64-bit generator (xoshiro256++ seeded via splitmix64).
// std::mt19937_64 is reproducible too, but its real-valued distributions are
// implementation-defined; every draw here is specified bit-for-bit so traces
// replay byte-identically.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1]: never returns 0, can return 1.
    double next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on (low, high].
    double uniform(double low, double high) { return low + next_unit() * (high - low); }

    // Normal with mean (low+high)/2 and sigma (high-low)/4, rejection-sampled
    // into (low, high].
    double truncated_normal(double low, double high) {
        const double mean = 0.5 * (low + high);
        const double sigma = 0.25 * (high - low);
        for (;;) {
            const double u1 = next_unit();
            const double u2 = next_unit();
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double z0 = r * std::cos(6.283185307179586476925286766559 * u2);
            const double z1 = r * std::sin(6.283185307179586476925286766559 * u2);
            for (double z : {z0, z1}) {
                const double v = mean + sigma * z;
                if (v > low && v <= high) return v;
            }
        }
    }

    std::uint64_t state_word(int i) const { return state_[i]; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace soctherm
