#pragma once

#include <array>
#include <cstdint>

#include "lowdeg/boolean_function.hpp"

namespace lowdeg {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output function (Steele, Lea, Flood). A bijection on 64-bit words.
constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t next() noexcept { return splitmix_mix(state_ += kGoldenGamma); }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna), state filled from SplitMix64(key).
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t key) noexcept;

  std::uint64_t next() noexcept;
  std::uint64_t operator()() noexcept { return next(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept;
  // Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

// Substream key for the index-th independent draw under `seed`:
//   splitmix_mix(seed ^ kGoldenGamma * index).
// Distinct indices give distinct keys.
constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix_mix(seed ^ (kGoldenGamma * index));
}

// 2^p i.i.d. uniform signs. Word k of the truth table is the k-th output of
// Xoshiro256(stream_key), masked to 2^p bits when p < 6.
BooleanFunction sample_function(int p, std::uint64_t stream_key);

}  // namespace lowdeg
