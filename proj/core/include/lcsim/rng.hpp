#pragma once

#include <cmath>
#include <cstdint>

namespace lcsim {

// Deterministic 64-bit generator (xoshiro-free, single splitmix64 core). All
// stochastic code in the library draws through this type so that results are
// reproducible across standard libraries and platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1].
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform01()) / rate; }

    // Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    bool bernoulli(double p) { return uniform01() <= p; }

  private:
    std::uint64_t state_;
};

// Stable derivation of independent substream seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    Rng r(master ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    return r.next_u64();
}

}  // namespace lcsim
