#pragma once

// Dense bounded-variable primal simplex with Bland's rule.
//
//   maximize  c^T x   subject to  A x = b,  lo <= x <= hi
//
// All problem data are small integers. The caller supplies a starting basis
// for which the starting point (nonbasic variables at their lower bound, or 0
// when free) is feasible, so a single phase suffices.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lowdeg/error.hpp"

namespace lowdeg::lp {

struct Bound {
  std::optional<int> lo;
  std::optional<int> hi;
  bool fixed() const { return lo && hi && *lo == *hi; }
};

struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> a;  // row-major rows x cols
  std::vector<int> b;
  std::vector<int> cost;
  std::vector<Bound> bounds;
  std::vector<std::size_t> start_basis;  // one identity column per row

  int at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class State { Basic, AtLower, AtUpper, FreeZero };

template <class T>
struct Solution {
  std::vector<T> x;
  std::vector<State> state;
  std::vector<std::size_t> basis;  // basis[i] = column basic in row i
  T objective;
  std::uint64_t pivots = 0;
};

template <class T>
struct Arith;

template <>
struct Arith<mpq_class> {
  static bool positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool negative(const mpq_class& v) { return sgn(v) < 0; }
  static bool zero(const mpq_class& v) { return sgn(v) == 0; }
  static bool tied(const mpq_class& a, const mpq_class& b) { return a == b; }
  static bool pivotable(const mpq_class& v) { return sgn(v) != 0; }
  static bool stronger(const mpq_class&, const mpq_class&) { return false; }
  static void clean(mpq_class&) {}
  static constexpr bool kPreferLarge = false;
  static constexpr bool kDantzig = false;
  static constexpr std::uint64_t kRefactorEvery = 0;
};

template <>
struct Arith<double> {
  static constexpr double kEps = 1e-9;
  static bool positive(double v) { return v > kEps; }
  static bool negative(double v) { return v < -kEps; }
  static bool zero(double v) { return std::fabs(v) <= kEps; }
  static bool tied(double a, double b) { return std::fabs(a - b) <= 1e-11 * (1.0 + std::fabs(b)); }
  static bool pivotable(double v) { return std::fabs(v) > 1e-7; }
  static bool stronger(double a, double b) { return std::fabs(a) > std::fabs(b); }
  static constexpr bool kPreferLarge = true;
  static constexpr bool kDantzig = true;
  static constexpr std::uint64_t kRefactorEvery = 64;
  static void clean(double& v) {
    if (std::fabs(v) < 1e-13) v = 0.0;
  }
};

// Recomputes the tableau B^-1 A, the basic values and the reduced costs from
// the original data for the basis and nonbasic states in `sol`. Row order of
// the basis may change. Returns false if the basis matrix is singular.
template <class T>
bool rebuild(const Problem& pb, Solution<T>& sol, std::vector<T>& tab, std::vector<T>& beta, std::vector<T>& reduced) {
  using A = Arith<T>;
  const std::size_t m = pb.rows, n = pb.cols;
  tab.assign(m * n, T(0));
  for (std::size_t k = 0; k < m * n; ++k)
    if (pb.a[k] != 0) tab[k] = pb.a[k];
  beta.assign(m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    T r = pb.b[i];
    for (std::size_t j = 0; j < n; ++j)
      if (sol.state[j] != State::Basic && pb.at(i, j) != 0 && !A::zero(sol.x[j])) r -= T(pb.at(i, j)) * sol.x[j];
    beta[i] = r;
  }

  std::vector<bool> used(m, false);
  std::vector<std::size_t> basis(m, n);
  std::vector<std::size_t> nz;
  for (std::size_t col : sol.basis) {
    std::size_t r = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || A::zero(tab[i * n + col])) continue;
      if (r == m || A::stronger(tab[i * n + col], tab[r * n + col])) r = i;
      if (!A::kPreferLarge) break;
    }
    if (r == m) return false;
    used[r] = true;
    basis[r] = col;
    const T pivot = tab[r * n + col];
    T* prow = tab.data() + r * n;
    nz.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (!A::zero(prow[j])) {
        prow[j] /= pivot;
        nz.push_back(j);
      } else {
        prow[j] = 0;
      }
    beta[r] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || A::zero(tab[i * n + col])) continue;
      const T factor = tab[i * n + col];
      T* row = tab.data() + i * n;
      for (auto j : nz) {
        row[j] -= factor * prow[j];
        A::clean(row[j]);
      }
      row[col] = 0;
      beta[i] -= factor * beta[r];
    }
  }
  sol.basis = basis;
  reduced.assign(n, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    T r = pb.cost[j];
    for (std::size_t i = 0; i < m; ++i)
      if (pb.cost[basis[i]] != 0 && !A::zero(tab[i * n + j])) r -= T(pb.cost[basis[i]]) * tab[i * n + j];
    A::clean(r);
    reduced[j] = sol.state[j] == State::Basic ? T(0) : r;
  }
  return true;
}

// Starting point: the problem's start basis with every nonbasic variable at its
// lower bound (upper if only that exists, 0 if free).
template <class T>
Solution<T> cold_start(const Problem& pb) {
  Solution<T> sol;
  const std::size_t n = pb.cols;
  sol.state.assign(n, State::AtLower);
  sol.x.assign(n, T(0));
  sol.basis = pb.start_basis;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& bd = pb.bounds[j];
    if (bd.lo) {
      sol.x[j] = *bd.lo;
    } else if (bd.hi) {
      sol.state[j] = State::AtUpper;
      sol.x[j] = *bd.hi;
    } else {
      sol.state[j] = State::FreeZero;
    }
  }
  for (auto j : pb.start_basis) sol.state[j] = State::Basic;
  return sol;
}

// Nonbasic values implied by `state`; basic entries are filled in by rebuild().
template <class T>
Solution<T> warm_start(const Problem& pb, const std::vector<std::size_t>& basis, const std::vector<State>& state) {
  Solution<T> sol;
  sol.basis = basis;
  sol.state = state;
  sol.x.assign(pb.cols, T(0));
  for (std::size_t j = 0; j < pb.cols; ++j) {
    if (state[j] == State::AtLower) sol.x[j] = *pb.bounds[j].lo;
    if (state[j] == State::AtUpper) sol.x[j] = *pb.bounds[j].hi;
  }
  return sol;
}

// Primal simplex from `sol`, which must describe a nonsingular, primal feasible
// basis. In floating point the tableau is rebuilt from the integer data every
// `refactor_every` pivots and once more at the end.
template <class T>
Solution<T> solve(const Problem& pb, Solution<T> sol, std::uint64_t max_pivots = 2'000'000) {
  using A = Arith<T>;
  const std::size_t m = pb.rows, n = pb.cols;
  std::vector<T> tab, beta, reduced;
  if (!rebuild(pb, sol, tab, beta, reduced)) fail(ErrorCode::Internal, "simplex: starting basis is singular");
  for (std::size_t i = 0; i < m; ++i) {
    const auto& bd = pb.bounds[sol.basis[i]];
    if ((bd.lo && A::negative(beta[i] - T(*bd.lo))) || (bd.hi && A::positive(beta[i] - T(*bd.hi))))
      fail(ErrorCode::Internal, "simplex: starting basis is infeasible");
  }

  constexpr std::uint64_t kStallLimit = 5000;
  std::uint64_t since_rebuild = 0, stall = 0;
  for (;;) {
    if (A::kRefactorEvery && ++since_rebuild >= A::kRefactorEvery) {
      since_rebuild = 0;
      if (!rebuild(pb, sol, tab, beta, reduced)) fail(ErrorCode::Internal, "simplex: basis became singular");
    }
    // Bland: lowest-index improving nonbasic column. The floating path prices by
    // the largest reduced cost instead and drops back to Bland after a long run
    // of degenerate pivots.
    const bool bland = !A::kDantzig || stall >= kStallLimit;
    std::size_t enter = n;
    int dir = 0;
    T best = T(0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto s = sol.state[j];
      if (s == State::Basic || pb.bounds[j].fixed()) continue;
      int want = 0;
      if (A::positive(reduced[j]) && (s == State::AtLower || s == State::FreeZero)) want = 1;
      if (A::negative(reduced[j]) && (s == State::AtUpper || s == State::FreeZero)) want = -1;
      if (!want) continue;
      const T gain = want > 0 ? reduced[j] : T(-reduced[j]);
      if (enter == n || gain > best) {
        enter = j;
        dir = want;
        best = gain;
      }
      if (bland) break;
    }
    if (enter == n) {
      if (A::kRefactorEvery && since_rebuild > 0) {
        // confirm optimality on a freshly rebuilt tableau
        since_rebuild = A::kRefactorEvery;
        continue;
      }
      break;
    }
    if (++sol.pivots > max_pivots) fail(ErrorCode::Internal, "simplex: pivot limit exceeded");

    // Ratio test; ties go to the lowest basic column index.
    std::optional<T> step;
    std::size_t leave_row = m;
    const auto& eb = pb.bounds[enter];
    bool flip = false;
    if (eb.lo && eb.hi) {
      step = T(*eb.hi - *eb.lo);
      flip = true;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const T& col = tab[i * n + enter];
      if (!A::pivotable(col)) continue;
      const T alpha = dir > 0 ? col : T(-col);
      const auto& bd = pb.bounds[sol.basis[i]];
      std::optional<T> limit;
      if (A::positive(alpha) && bd.lo)
        limit = (beta[i] - T(*bd.lo)) / alpha;
      else if (A::negative(alpha) && bd.hi)
        limit = (T(*bd.hi) - beta[i]) / T(-alpha);
      if (!limit) continue;
      if (A::negative(*limit) || A::zero(*limit)) *limit = T(0);
      const bool better = !step || (*limit < *step && !A::tied(*limit, *step));
      const bool tie = step && A::tied(*limit, *step) && !flip && leave_row < m && sol.basis[i] < sol.basis[leave_row];
      if (better || tie) {
        step = *limit;
        leave_row = i;
        flip = false;
      }
    }
    if (!step) fail(ErrorCode::Internal, "simplex: problem is unbounded");

    stall = A::zero(*step) ? stall + 1 : 0;
    const T delta = dir > 0 ? *step : T(-*step);
    for (std::size_t i = 0; i < m; ++i)
      if (!A::zero(tab[i * n + enter])) beta[i] -= delta * tab[i * n + enter];
    const T entering_value = sol.x[enter] + delta;

    if (flip) {
      sol.x[enter] = entering_value;
      sol.state[enter] = dir > 0 ? State::AtUpper : State::AtLower;
      continue;
    }

    const std::size_t r = leave_row;
    const std::size_t leaving = sol.basis[r];
    {
      const T alpha = dir > 0 ? tab[r * n + enter] : T(-tab[r * n + enter]);
      const auto& bd = pb.bounds[leaving];
      if (A::positive(alpha)) {
        sol.state[leaving] = State::AtLower;
        sol.x[leaving] = *bd.lo;
      } else {
        sol.state[leaving] = State::AtUpper;
        sol.x[leaving] = *bd.hi;
      }
    }
    sol.basis[r] = enter;
    sol.state[enter] = State::Basic;
    beta[r] = entering_value;

    const T pivot = tab[r * n + enter];
    T* prow = tab.data() + r * n;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < n; ++j)
      if (!A::zero(prow[j])) {
        prow[j] /= pivot;
        nz.push_back(j);
      } else {
        prow[j] = 0;
      }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      T* row = tab.data() + i * n;
      if (A::zero(row[enter])) continue;
      const T factor = row[enter];
      for (auto j : nz) {
        row[j] -= factor * prow[j];
        A::clean(row[j]);
      }
      row[enter] = 0;
    }
    if (!A::zero(reduced[enter])) {
      const T factor = reduced[enter];
      for (auto j : nz) {
        reduced[j] -= factor * prow[j];
        A::clean(reduced[j]);
      }
      reduced[enter] = 0;
    }
  }

  for (std::size_t i = 0; i < m; ++i) sol.x[sol.basis[i]] = beta[i];
  sol.objective = T(0);
  for (std::size_t j = 0; j < n; ++j)
    if (pb.cost[j] != 0) sol.objective += T(pb.cost[j]) * sol.x[j];
  return sol;
}

template <class T>
Solution<T> solve(const Problem& pb) {
  return solve<T>(pb, cold_start<T>(pb));
}

// Exact replay of a basis found in floating point: recomputes the basic
// solution and the duals in rationals and checks primal feasibility and
// optimality. Throws ErrorCode::Verification if either fails.
Solution<mpq_class> verify_basis(const Problem& pb, const std::vector<std::size_t>& basis,
                                 const std::vector<State>& state);

}  // namespace lowdeg::lp
