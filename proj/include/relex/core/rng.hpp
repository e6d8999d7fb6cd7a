#pragma once

#include <cstdint>
#include <random>

namespace relex {

// splitmix64, used to derive independent seeds from (master_seed, index) pairs.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t index, uint64_t stream = 0) {
    return mix64(master ^ mix64(index + 1) ^ mix64(stream * 0x5851f42d4c957f2dULL));
}

// mt19937_64 with hand-rolled transforms. The engine's output sequence is
// pinned by the standard; std::uniform_*_distribution is not, so results
// would differ across standard libraries if we used them.
class Rng {
public:
    Rng() : gen_(0) {}
    explicit Rng(uint64_t seed) : gen_(seed) {}

    void reseed(uint64_t seed) { gen_.seed(seed); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    uint64_t uniform_int(uint64_t n) { return n == 0 ? 0 : gen_() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace relex
