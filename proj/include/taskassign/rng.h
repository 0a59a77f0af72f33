#pragma once

// Portable seeded randomness. Instances must be byte-identical across
// platforms, so nothing here goes through <random> distributions (their
// algorithms are implementation-defined).
//
// Stream: xoshiro256** (Blackman & Vigna) with its 256-bit state filled by
// four successive splitmix64 outputs from the 64-bit seed.
//   uniform01()        = (next() >> 11) * 2^-53
//   uniform_below(n)   = rejection sampling on next() against the largest
//                        multiple of n below 2^64
//   shuffle            = Fisher-Yates from the back, j = uniform_below(i + 1)

#include <array>
#include <cstdint>
#include <span>

namespace taskassign {

struct Seed {
  std::uint64_t base = 0;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Order-sensitive 64-bit combination of values, used for per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

class Rng {
 public:
  explicit Rng(Seed seed);
  explicit Rng(std::uint64_t seed) : Rng(Seed{seed}) {}

  std::uint64_t next();
  double uniform01();
  // Uniform on {0, ..., n - 1}; n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);
  // Uniform on {lo, ..., hi}.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace taskassign
