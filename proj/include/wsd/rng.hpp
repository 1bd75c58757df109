#pragma once

#include <cstdint>
#include <vector>

namespace wsd {

// splitmix64: tiny deterministic PRNG with identical output on every
// platform. All seeded behaviour in the suite (fold dealing, tuning
// splits, corpus synthesis, boosting feature sampling) flows through it
// so that runs are reproducible bit-for-bit.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n). n must be > 0.
  uint64_t next_below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1).
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

private:
  uint64_t state_;
};

// Derives an independent stream seed from (seed, salt). Used to give each
// sense / round / method its own reproducible stream.
inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
  mix.next();
  return mix.next();
}

// Fisher-Yates shuffle driven by SplitMix64 (std::shuffle output is not
// pinned across standard library implementations).
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = size_t(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace wsd
