#pragma once
// Splittable counter-seeded RNG for reproducible parallel Monte Carlo.
//
// Stream layout: a 64-bit user seed identifies an experiment; replica i
// draws from child(seed, i). Child derivation is a pure function
//   state0 = seed + (i+1) * 0x9E3779B97F4A7C15  (golden-ratio increment)
//   s[0..3] = four successive SplitMix64 outputs of state0
// so replicas never share state and serial/parallel runs are bit-identical.
// Generator: xoshiro256** (Blackman/Vigna, public domain reference code).

#include <cstdint>
#include <cmath>

namespace detproc {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
        have_normal_ = false;
    }

    // Derived stream for replica `index` of experiment `seed`.
    static Rng child(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53-bit resolution.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1], safe as log() argument.
    double uniform_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Standard normal, Box-Muller; second variate cached within the stream.
    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        cached_normal_ = r * std::sin(a);
        have_normal_ = true;
        return r * std::cos(a);
    }

    long poisson(double mean) {
        // Inversion by sequential search for small means, else normal windowed
        // exponential-steps fallback (means here stay modest).
        if (mean < 50.0) {
            double l = std::exp(-mean), p = 1.0;
            long k = 0;
            do {
                ++k;
                p *= uniform();
            } while (p > l);
            return k - 1;
        }
        // Sum of exponential interarrivals.
        double t = 0.0;
        long k = -1;
        while (t < mean) {
            t += exponential(1.0);
            ++k;
        }
        return k;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    bool have_normal_ = false;
    double cached_normal_ = 0.0;
};

} // namespace detproc
