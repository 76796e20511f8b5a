#include "lowdeg/collision.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "lowdeg/error.hpp"
#include "lowdeg/parallel.hpp"
#include "lowdeg/random.hpp"
#include "lowdeg/transform.hpp"

namespace lowdeg {

namespace {

// sum_{x in T} f(x) w_J(x) for each J in `masks`, picking the cheaper of direct
// summation and one transform of f * 1_T.
std::vector<std::int64_t> flip_sums(const BooleanFunction& f, const std::vector<std::uint64_t>& masks,
                                    const std::vector<std::uint64_t>& flip_set) {
  std::vector<std::int64_t> sums(masks.size(), 0);
  const auto p = static_cast<std::uint64_t>(f.dim());
  if (flip_set.size() * masks.size() <= 4 * f.size() * p) {
    for (auto x : flip_set) {
      const int fx = f.value(x);
      for (std::size_t k = 0; k < masks.size(); ++k) sums[k] += fx * walsh(masks[k], x);
    }
    return sums;
  }
  std::vector<std::int64_t> v(f.size(), 0);
  for (auto x : flip_set) v[x] = f.value(x);
  wht(v);
  for (std::size_t k = 0; k < masks.size(); ++k) sums[k] = v[masks[k]];
  return sums;
}

bool valid_flip_set(const BooleanFunction& f, const std::vector<std::uint64_t>& flip_set) {
  if (flip_set.empty()) return false;
  for (std::size_t i = 0; i < flip_set.size(); ++i) {
    if (flip_set[i] >= f.size()) return false;
    if (i > 0 && flip_set[i] <= flip_set[i - 1]) return false;
  }
  return true;
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool verify_witness(const BooleanFunction& f, int d, const std::vector<std::uint64_t>& flip_set) {
  check_degree(f.dim(), d);
  auto t = sorted_unique(flip_set);
  if (t.size() != flip_set.size() || !valid_flip_set(f, t)) return false;
  const auto sums = flip_sums(f, low_degree_masks(f.dim(), d), t);
  return std::all_of(sums.begin(), sums.end(), [](std::int64_t s) { return s == 0; });
}

std::int64_t collision_energy(const BooleanFunction& f, int d, const std::vector<std::uint64_t>& flip_set) {
  check_degree(f.dim(), d);
  auto t = sorted_unique(flip_set);
  for (auto x : t) require(x < f.size(), "flip point out of range");
  std::int64_t e = 0;
  for (auto s : flip_sums(f, low_degree_masks(f.dim(), d), t)) e += s * s;
  return e;
}

ExactCollisionResult collide_exact(const BooleanFunction& f, int d) {
  if (f.dim() > kMaxExactDim)
    fail(ErrorCode::Limit, "collide_exact: exhaustive search is limited to p <= " + std::to_string(kMaxExactDim));
  check_degree(f.dim(), d);
  const auto masks = low_degree_masks(f.dim(), d);
  const std::size_t k_count = masks.size();
  const auto n = static_cast<int>(f.size());

  // rows[x][k] = f(x) w_{J_k}(x)
  std::vector<std::vector<int>> rows(n, std::vector<int>(k_count));
  for (int x = 0; x < n; ++x)
    for (std::size_t k = 0; k < k_count; ++k) rows[x][k] = f.value(x) * walsh(masks[k], x);

  std::vector<int> chosen;
  // partial[depth] = running sums after `depth` picks
  std::vector<std::vector<int>> partial(n + 1, std::vector<int>(k_count, 0));
  ExactCollisionResult result;
  result.exhaustive = true;

  // Depth-first in lexicographic order over subsets of a fixed size.
  auto search = [&](auto&& self, int start, int remaining) -> bool {
    const auto depth = chosen.size();
    if (remaining == 0) return std::all_of(partial[depth].begin(), partial[depth].end(), [](int s) { return s == 0; });
    for (int x = start; x <= n - remaining; ++x) {
      for (std::size_t k = 0; k < k_count; ++k) partial[depth + 1][k] = partial[depth][k] + rows[x][k];
      chosen.push_back(x);
      if (self(self, x + 1, remaining - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (int size = 1; size <= n; ++size) {
    chosen.clear();
    if (search(search, 0, size)) {
      CollisionWitness w{f.dim(), d, {}};
      w.flip_set.assign(chosen.begin(), chosen.end());
      result.witness = std::move(w);
      return result;
    }
  }
  return result;
}

namespace {

std::optional<CollisionWitness> anneal_once(const BooleanFunction& f, int d, const std::vector<std::uint64_t>& masks,
                                            const AnnealParams& params, std::uint64_t restart,
                                            const std::atomic<std::uint64_t>& best) {
  const std::uint64_t n = f.size();
  const std::uint64_t iters = params.max_iters ? params.max_iters : 50 * n;
  double temp = params.init_temp > 0 ? params.init_temp : static_cast<double>(n);
  Xoshiro256 rng(substream_key(params.seed, restart));

  // Initial T: uniform subset of size N/2 (partial Fisher-Yates).
  std::vector<std::uint32_t> order(n);
  for (std::uint64_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  const std::uint64_t half = std::max<std::uint64_t>(n / 2, 1);
  for (std::uint64_t i = 0; i < half; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
  std::vector<std::uint8_t> member(n, 0);
  std::vector<std::uint64_t> initial(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
  std::sort(initial.begin(), initial.end());
  for (auto x : initial) member[x] = 1;
  std::uint64_t size = half;

  auto sums = flip_sums(f, masks, initial);
  std::int64_t energy = 0;
  for (auto s : sums) energy += s * s;
  const auto k_count = static_cast<std::int64_t>(masks.size());

  for (std::uint64_t it = 0; energy != 0 && it < iters; ++it) {
    if ((it & 1023) == 0 && best.load(std::memory_order_relaxed) < restart) return std::nullopt;
    const std::uint64_t x = rng.below(n);
    if (member[x] && size == 1) continue;
    const int sign = member[x] ? -f.value(x) : f.value(x);
    std::int64_t delta = k_count;
    for (std::size_t k = 0; k < masks.size(); ++k) delta += 2 * sums[k] * sign * walsh(masks[k], x);
    if (delta > 0 && !(rng.uniform() < std::exp(-static_cast<double>(delta) / temp))) {
      temp *= params.cooling;
      continue;
    }
    for (std::size_t k = 0; k < masks.size(); ++k) sums[k] += sign * walsh(masks[k], x);
    energy += delta;
    member[x] ^= 1;
    size = member[x] ? size + 1 : size - 1;
    temp *= params.cooling;
  }
  if (energy != 0) return std::nullopt;

  CollisionWitness w{f.dim(), d, {}};
  for (std::uint64_t x = 0; x < n; ++x)
    if (member[x]) w.flip_set.push_back(x);
  if (!verify_witness(f, d, w.flip_set)) fail(ErrorCode::Internal, "annealer produced an invalid witness");
  return w;
}

}  // namespace

std::optional<CollisionWitness> collide_anneal(const BooleanFunction& f, int d, const AnnealParams& params,
                                               int threads) {
  check_degree(f.dim(), d);
  require(params.restarts >= 1, "anneal: restarts must be positive");
  require(params.cooling > 0 && params.cooling <= 1, "anneal: cooling must lie in (0, 1]");
  require(params.init_temp >= 0, "anneal: initial temperature must be nonnegative");
  const auto masks = low_degree_masks(f.dim(), d);
  const auto restarts = static_cast<std::uint64_t>(params.restarts);
  std::vector<std::optional<CollisionWitness>> found(restarts);
  std::atomic<std::uint64_t> best{restarts};
  parallel_for(restarts, threads, [&](std::uint64_t r) {
    if (best.load() < r) return;
    found[r] = anneal_once(f, d, masks, params, r, best);
    if (found[r]) {
      std::uint64_t cur = best.load();
      while (r < cur && !best.compare_exchange_weak(cur, r)) {
      }
    }
  });
  for (auto& w : found)
    if (w) return w;
  return std::nullopt;
}

CensusReport collide_census(int p, int d, std::uint64_t samples, std::uint64_t seed, int threads,
                            std::uint64_t budget) {
  check_dim(p);
  check_degree(p, d);
  require(samples >= 2, "census: at least two samples are required");
  const auto masks = low_degree_masks(p, d);
  const std::uint64_t k_count = masks.size();
  if (samples > budget / k_count)
    fail(ErrorCode::Limit, "census: samples * K_d = " + std::to_string(samples) + " * " + std::to_string(k_count) +
                               " exceeds the memory budget of " + std::to_string(budget) + " coefficients");

  auto key_of = [&](std::uint64_t i, std::int64_t* out) {
    const auto s = spectrum(sample_function(p, substream_key(seed, i)));
    for (std::uint64_t k = 0; k < k_count; ++k) out[k] = s.coeffs[masks[k]];
  };
  std::vector<std::int64_t> keys(samples * k_count);
  parallel_for(samples, threads, [&](std::uint64_t i) { key_of(i, keys.data() + i * k_count); });

  auto key = [&](std::uint64_t i) { return std::span<const std::int64_t>(keys.data() + i * k_count, k_count); };
  std::vector<std::uint64_t> order(samples);
  for (std::uint64_t i = 0; i < samples; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    const auto ka = key(a), kb = key(b);
    const auto c = std::lexicographical_compare_three_way(ka.begin(), ka.end(), kb.begin(), kb.end());
    return c != 0 ? c < 0 : a < b;
  });

  CensusReport r;
  r.p = p;
  r.d = d;
  r.sample_count = samples;
  r.seed = seed;
  r.log_image_bound = static_cast<double>(k_count) * (p * std::numbers::ln2 + std::log1p(std::ldexp(1.0, -p)));
  std::uint64_t head = 0;
  for (std::uint64_t j = 0; j < samples; ++j) {
    const auto i = order[j];
    if (j == 0 || !std::ranges::equal(key(i), key(head))) {
      head = i;
      ++r.distinct_keys;
    } else {
      r.collision_pairs.emplace_back(head, i);
    }
  }
  std::sort(r.collision_pairs.begin(), r.collision_pairs.end());

  // Independent re-check from regenerated functions.
  std::vector<std::int64_t> a(k_count), b(k_count);
  for (const auto& [i, j] : r.collision_pairs) {
    key_of(i, a.data());
    key_of(j, b.data());
    if (a != b) fail(ErrorCode::Internal, "census: reported pair failed exact re-verification");
  }
  return r;
}

}  // namespace lowdeg
