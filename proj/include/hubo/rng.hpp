#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hubo {

// splitmix64 finalizer (Steele/Lea/Flood). Used for seed scrambling and for
// deriving independent per-worker streams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream k of a master seed: seed' = splitmix64(master + (k+1)*golden).
// Every parallel component (SA runs, sampler streams, coloring layers)
// derives its generator seed through this one function.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t k) {
  std::uint64_t s = master + (k + 1) * 0x9E3779B97F4A7C15ULL;
  return splitmix64(s);
}

// Seedable 64-bit generator. std::mt19937_64 output is fully specified by the
// standard, so sequences are reproducible across platforms; all value
// mappings below avoid std::*_distribution (whose output is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Multiply-shift mapping; bias is below 2^-40
  // for the range sizes used here.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  bool coin() { return (gen_() >> 63) != 0; }

  // Fisher-Yates; self-contained so shuffles are platform-reproducible.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hubo
