#ifndef EBUCB_RNG_HPP
#define EBUCB_RNG_HPP

#include <cstdint>
#include <random>

namespace ebucb {

// splitmix64 step; used to mix (base_seed, replication index) into a
// generator seed so replication r is reproducible independently of R.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t stream) {
    return splitmix64(base_seed ^ splitmix64(stream));
}

// Replication-local generator. Owned by exactly one replication; never shared.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform on [0,1) with 53 random bits; avoids the
    // implementation-defined std::uniform_real_distribution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 gen_;
};

} // namespace ebucb

#endif
