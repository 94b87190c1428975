#pragma once

#include <cstdint>

// Portable deterministic RNG (splitmix64). Output is part of the reproducibility
// contract: the same seed gives the same sample stream on every platform, which
// std::mt19937 plus distribution classes would not guarantee.

namespace hdflow {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); modulo bias is negligible for n << 2^64 and does not
    // affect correctness of identity testing
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t s_;
};

} // namespace hdflow
