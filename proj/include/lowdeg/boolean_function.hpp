#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lowdeg {

inline constexpr int kMaxDim = 24;

// Bit-packed truth table of f : {-1,1}^p -> {-1,1}.
//
// Point m in [0, 2^p) stands for x with x_i = (-1)^((m >> i) & 1). Bit m of
// the table is set iff f(x_m) = -1, so the all-zero table is the constant +1
// function. Bits past 2^p in the last word are always zero.
class BooleanFunction {
 public:
  // Constant +1 on {-1,1}^p.
  explicit BooleanFunction(int p);

  static BooleanFunction constant(int p, int value);
  // The Walsh character w_J, i.e. x -> prod_{j in J} x_j.
  static BooleanFunction character(int p, std::uint64_t mask);
  static BooleanFunction from_signs(int p, std::span<const int> signs);
  static BooleanFunction from_words(int p, std::vector<std::uint64_t> words);
  // Truth table given as the low 2^p bits of `bits` (p <= 6).
  static BooleanFunction from_index(int p, std::uint64_t bits);

  int dim() const noexcept { return p_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << p_; }

  bool bit(std::uint64_t m) const noexcept { return (words_[m >> 6] >> (m & 63)) & 1u; }
  int value(std::uint64_t m) const noexcept { return bit(m) ? -1 : 1; }
  void set_value(std::uint64_t m, int v);
  void flip(std::uint64_t m) noexcept { words_[m >> 6] ^= std::uint64_t{1} << (m & 63); }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  // Signs as +-1 integers, one per point.
  std::vector<std::int64_t> signs() const;

  BooleanFunction negated() const;
  BooleanFunction flipped(std::span<const std::uint64_t> points) const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  BooleanFunction(int p, std::vector<std::uint64_t> words);

  int p_;
  std::vector<std::uint64_t> words_;
};

std::uint64_t word_count(int p);
void check_dim(int p);

// "WBF1" text format: magic line, decimal p, then 2^p characters from {+,-}.
BooleanFunction parse_wbf(std::string_view text);
std::string format_wbf(const BooleanFunction& f);
BooleanFunction load_wbf(const std::string& path);
void save_wbf(const BooleanFunction& f, const std::string& path);

}  // namespace lowdeg
