#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace fgpit {

// Deterministic, platform-independent PRNG (splitmix64). Every randomized
// routine in the library derives its stream from an explicit seed so that
// identical (seed, inputs) reproduce identical results byte for byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for one trial of a multi-trial run.
    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        Rng seeder(master_seed ^ (0x9e3779b97f4a7c15ULL * (trial_index + 1)));
        seeder.next_u64();
        return Rng(seeder.next_u64());
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

    // Uniform in [0, bound) for arbitrary-precision bounds.
    mpz_class below(const mpz_class& bound) {
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        for (;;) {
            mpz_class v = 0;
            for (std::size_t w = 0; w < words; ++w) {
                v <<= 64;
                mpz_class word(0);
                std::uint64_t u = next_u64();
                mpz_import(word.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
                v |= word;
            }
            v >>= (words * 64 - bits);
            if (v < bound) return v;
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace fgpit
