// Slow, independent reference implementations used only by the tests.
#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "lowdeg/boolean_function.hpp"

namespace oracle {

inline int sign_of_char(std::uint64_t mask, std::uint64_t point) {
  int s = 1;
  for (std::uint64_t both = mask & point; both; both &= both - 1) s = -s;
  return s;
}

// S_J by direct O(N^2) summation.
inline std::vector<std::int64_t> direct_transform(const std::vector<std::int64_t>& v) {
  const std::uint64_t n = v.size();
  std::vector<std::int64_t> out(n, 0);
  for (std::uint64_t j = 0; j < n; ++j)
    for (std::uint64_t m = 0; m < n; ++m) out[j] += v[m] * sign_of_char(j, m);
  return out;
}

inline std::vector<std::int64_t> signs(const lowdeg::BooleanFunction& f) {
  std::vector<std::int64_t> v(f.size());
  for (std::uint64_t m = 0; m < f.size(); ++m) v[m] = f.value(m);
  return v;
}

// N q_d(x_m) = sum_{|J|<=d} S_J w_J(x_m), evaluated term by term.
inline std::vector<std::int64_t> direct_truncation(const lowdeg::BooleanFunction& f, int d) {
  const auto s = direct_transform(signs(f));
  std::vector<std::int64_t> t(f.size(), 0);
  for (std::uint64_t m = 0; m < f.size(); ++m)
    for (std::uint64_t j = 0; j < f.size(); ++j)
      if (std::popcount(j) <= d) t[m] += s[j] * sign_of_char(j, m);
  return t;
}

inline std::uint64_t choose(int n, int k) {
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

// #{x in {0,1}^p : popcount(x) <= k}
inline std::uint64_t lower_count(int p, int k) {
  std::uint64_t total = 0;
  for (int i = 0; i <= k && i <= p; ++i) total += choose(p, i);
  return total;
}

// Low-degree key of the function with truth-table index `bits`.
inline std::vector<std::int64_t> key(int p, std::uint64_t bits, int d) {
  std::vector<std::int64_t> k;
  const std::uint64_t n = std::uint64_t{1} << p;
  for (std::uint64_t j = 0; j < n; ++j) {
    if (std::popcount(j) > d) continue;
    std::int64_t s = 0;
    for (std::uint64_t m = 0; m < n; ++m) s += (((bits >> m) & 1) ? -1 : 1) * sign_of_char(j, m);
    k.push_back(s);
  }
  return k;
}

// Multiplicity of every low-degree key over all 2^N functions (p <= 4).
inline std::map<std::vector<std::int64_t>, std::uint64_t> key_classes(int p, int d) {
  std::map<std::vector<std::int64_t>, std::uint64_t> classes;
  const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << p);
  for (std::uint64_t bits = 0; bits < count; ++bits) ++classes[key(p, bits, d)];
  return classes;
}

// |U_d|: functions whose low-degree key is shared with no other function.
inline std::uint64_t unique_count(int p, int d) {
  std::uint64_t u = 0;
  for (const auto& [k, c] : key_classes(p, d))
    if (c == 1) ++u;
  return u;
}

}  // namespace oracle
