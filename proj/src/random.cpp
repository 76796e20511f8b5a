#include "lowdeg/random.hpp"

#include <bit>

namespace lowdeg {

Xoshiro256::Xoshiro256(std::uint64_t key) noexcept {
  SplitMix64 sm(key);
  for (auto& w : s_) w = sm.next();
}

std::uint64_t Xoshiro256::next() noexcept {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Xoshiro256::below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

BooleanFunction sample_function(int p, std::uint64_t stream_key) {
  check_dim(p);
  Xoshiro256 rng(stream_key);
  std::vector<std::uint64_t> words(word_count(p));
  for (auto& w : words) w = rng.next();
  if (p < 6) words[0] &= (std::uint64_t{1} << (1u << p)) - 1;
  return BooleanFunction::from_words(p, std::move(words));
}

}  // namespace lowdeg
