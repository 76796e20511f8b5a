#include "lowdeg/transform.hpp"

#include <algorithm>
#include <cstdlib>

#include "lowdeg/error.hpp"

namespace lowdeg {

void check_degree(int p, int d) {
  if (d < 0 || d > p)
    fail(ErrorCode::InvalidArgument, "degree d must be in [0, p] = [0, " + std::to_string(p) + "], got " +
                                         std::to_string(d));
}

void wht(std::span<std::int64_t> values) {
  const std::size_t n = values.size();
  if (n == 0 || !std::has_single_bit(n)) fail(ErrorCode::InvalidArgument, "wht: length must be a power of two");
  if (n > (std::size_t{1} << kMaxDim)) fail(ErrorCode::Limit, "wht: length exceeds 2^24");
  for (auto v : values)
    if (v > kWhtEntryBound || v < -kWhtEntryBound) fail(ErrorCode::Limit, "wht: entry magnitude exceeds 2^32");

  std::int64_t* x = values.data();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      std::int64_t* lo = x + i;
      std::int64_t* hi = x + i + h;
      for (std::size_t j = 0; j < h; ++j) {
        const std::int64_t a = lo[j];
        const std::int64_t b = hi[j];
        lo[j] = a + b;
        hi[j] = a - b;
      }
    }
  }
}

std::vector<std::int64_t> wht_copy(std::span<const std::int64_t> values) {
  std::vector<std::int64_t> out(values.begin(), values.end());
  wht(out);
  return out;
}

Spectrum spectrum(const BooleanFunction& f) {
  Spectrum s{f.dim(), f.signs()};
  wht(s.coeffs);
  return s;
}

std::vector<std::uint64_t> low_degree_masks(int p, int d) {
  check_degree(p, d);
  std::vector<std::uint64_t> masks;
  const std::uint64_t n = std::uint64_t{1} << p;
  for (std::uint64_t m = 0; m < n; ++m)
    if (degree(m) <= d) masks.push_back(m);
  return masks;
}

LowFrequencyData low_frequency_data(const Spectrum& s, int d) {
  check_degree(s.p, d);
  LowFrequencyData out{s.p, d, {}};
  for (std::uint64_t m = 0; m < s.size(); ++m)
    if (degree(m) <= d) out.entries.push_back(s.coeffs[m]);
  return out;
}

TruncationResult truncate(const BooleanFunction& f, int d) { return truncate(f, spectrum(f), d); }

TruncationResult truncate(const BooleanFunction& f, const Spectrum& s, int d) {
  check_degree(f.dim(), d);
  require(s.p == f.dim() && s.size() == f.size(), "truncate: spectrum does not match function");
  TruncationResult t{f.dim(), d, s.coeffs, {}};
  for (std::uint64_t m = 0; m < s.size(); ++m)
    if (degree(m) > d) t.trunc_numerators[m] = 0;
  wht(t.trunc_numerators);
  const auto n = static_cast<std::int64_t>(f.size());
  t.residual_numerators.resize(f.size());
  for (std::uint64_t m = 0; m < f.size(); ++m) t.residual_numerators[m] = n * f.value(m) - t.trunc_numerators[m];
  return t;
}

BooleanFunction function_from_spectrum(const Spectrum& s) {
  check_dim(s.p);
  if (s.size() != (std::uint64_t{1} << s.p)) fail(ErrorCode::Parse, "spectrum must have exactly 2^p coefficients");
  const auto n = static_cast<std::int64_t>(s.size());
  for (auto c : s.coeffs)
    if (std::llabs(c) > n) fail(ErrorCode::Parse, "spectrum coefficient exceeds N in magnitude");
  auto values = wht_copy(s.coeffs);
  BooleanFunction f(s.p);
  for (std::uint64_t m = 0; m < s.size(); ++m) {
    if (values[m] == -n)
      f.flip(m);
    else if (values[m] != n)
      fail(ErrorCode::Parse, "coefficients are not the spectrum of a Boolean function");
  }
  return f;
}

}  // namespace lowdeg
