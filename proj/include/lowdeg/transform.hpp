#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "lowdeg/boolean_function.hpp"

namespace lowdeg {

// Largest magnitude accepted by wht(); keeps every output inside int64.
inline constexpr std::int64_t kWhtEntryBound = std::int64_t{1} << 32;

inline int degree(std::uint64_t mask) noexcept { return std::popcount(mask); }

// w_J(x_m) = (-1)^popcount(m & J).
inline int walsh(std::uint64_t mask, std::uint64_t point) noexcept {
  return (std::popcount(mask & point) & 1) ? -1 : 1;
}

// Unnormalized Walsh-Hadamard transform, in place:
//   out[J] = sum_m in[m] * (-1)^popcount(m & J).
// Applying it twice multiplies by the length.
void wht(std::span<std::int64_t> values);
std::vector<std::int64_t> wht_copy(std::span<const std::int64_t> values);

// S_J(f) = sum_x f(x) w_J(x) for every mask J.
struct Spectrum {
  int p = 0;
  std::vector<std::int64_t> coeffs;

  std::uint64_t size() const noexcept { return coeffs.size(); }
  std::int64_t operator[](std::uint64_t mask) const { return coeffs[mask]; }
  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

// The K_d coefficients S_J with |J| <= d, in increasing mask order.
struct LowFrequencyData {
  int p = 0;
  int d = 0;
  std::vector<std::int64_t> entries;

  friend bool operator==(const LowFrequencyData&, const LowFrequencyData&) = default;
};

// trunc[m] = N * q_d(x_m) and residual[m] = N * r_d(x_m) = N f(x_m) - trunc[m].
struct TruncationResult {
  int p = 0;
  int d = 0;
  std::vector<std::int64_t> trunc_numerators;
  std::vector<std::int64_t> residual_numerators;
};

Spectrum spectrum(const BooleanFunction& f);
LowFrequencyData low_frequency_data(const Spectrum& s, int d);
TruncationResult truncate(const BooleanFunction& f, int d);
TruncationResult truncate(const BooleanFunction& f, const Spectrum& s, int d);

// Inverse of spectrum(); fails unless `s` is the spectrum of a Boolean function.
BooleanFunction function_from_spectrum(const Spectrum& s);

// Masks of degree <= d in increasing order (size K_d).
std::vector<std::uint64_t> low_degree_masks(int p, int d);

void check_degree(int p, int d);

}  // namespace lowdeg
