#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowdeg/boolean_function.hpp"

namespace lowdeg {

// Flipping f on `flip_set` gives a Boolean g != f with the same degree-<=d
// coefficients. Masks are sorted and distinct.
struct CollisionWitness {
  int p = 0;
  int d = 0;
  std::vector<std::uint64_t> flip_set;

  BooleanFunction apply(const BooleanFunction& f) const { return f.flipped(flip_set); }
};

// Exact integer check: T nonempty, in range, and sum_{x in T} f(x) w_J(x) = 0 for all |J| <= d.
bool verify_witness(const BooleanFunction& f, int d, const std::vector<std::uint64_t>& flip_set);

inline constexpr int kMaxExactDim = 4;

struct ExactCollisionResult {
  std::optional<CollisionWitness> witness;
  bool exhaustive = false;
};

// Full search over flip sets by increasing size, lexicographic within a size,
// so the first hit is the minimal witness. Requires p <= 4.
ExactCollisionResult collide_exact(const BooleanFunction& f, int d);

struct AnnealParams {
  int restarts = 20;
  std::uint64_t max_iters = 0;  // 0 means 50 * N
  double init_temp = 0;         // 0 means N
  double cooling = 0.995;
  std::uint64_t seed = 0;
};

// E(T) = sum_{|J|<=d} (sum_{x in T} f(x) w_J(x))^2, the quantity minimized by the annealer.
std::int64_t collision_energy(const BooleanFunction& f, int d, const std::vector<std::uint64_t>& flip_set);

// Simulated annealing over flip sets; restart r runs on substream r of `seed`.
// The witness from the lowest successful restart is returned, independent of `threads`.
std::optional<CollisionWitness> collide_anneal(const BooleanFunction& f, int d, const AnnealParams& params,
                                               int threads = 1);

struct CensusReport {
  int p = 0;
  int d = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t distinct_keys = 0;
  // (earliest sample carrying a key, later sample with the same key), sorted.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> collision_pairs;
  double log_image_bound = 0;  // K_d log(N + 1)
};

inline constexpr std::uint64_t kDefaultCensusBudget = std::uint64_t{1} << 26;

// Draws `samples` functions on substreams 0..samples-1 of `seed` and groups them by
// exact low-frequency data. `budget` caps samples * K_d stored coefficients.
CensusReport collide_census(int p, int d, std::uint64_t samples, std::uint64_t seed, int threads = 1,
                            std::uint64_t budget = kDefaultCensusBudget);

}  // namespace lowdeg
