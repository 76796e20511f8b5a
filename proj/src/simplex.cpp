#include "simplex.hpp"

namespace lowdeg::lp {

namespace {

// Gauss-Jordan on a dense rational system; skips zero entries, which dominate
// the +-1 / identity bases produced here.
std::vector<mpq_class> solve_dense(std::vector<mpq_class> mat, std::vector<mpq_class> rhs, std::size_t m) {
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (piv < m && sgn(mat[piv * m + c]) == 0) ++piv;
    if (piv == m) fail(ErrorCode::Verification, "simplex verification: basis matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < m; ++j) std::swap(mat[piv * m + j], mat[c * m + j]);
      std::swap(rhs[piv], rhs[c]);
    }
    const mpq_class pivot = mat[c * m + c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(mat[c * m + j]) != 0) {
        mat[c * m + j] /= pivot;
        nz.push_back(j);
      }
    rhs[c] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c || sgn(mat[i * m + c]) == 0) continue;
      const mpq_class factor = mat[i * m + c];
      for (auto j : nz) mat[i * m + j] -= factor * mat[c * m + j];
      rhs[i] -= factor * rhs[c];
    }
  }
  return rhs;
}

}  // namespace

Solution<mpq_class> verify_basis(const Problem& pb, const std::vector<std::size_t>& basis,
                                 const std::vector<State>& state) {
  const std::size_t m = pb.rows, n = pb.cols;
  Solution<mpq_class> sol;
  sol.basis = basis;
  sol.state = state;
  sol.x.assign(n, mpq_class(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (state[j] == State::AtLower) sol.x[j] = *pb.bounds[j].lo;
    if (state[j] == State::AtUpper) sol.x[j] = *pb.bounds[j].hi;
  }

  std::vector<mpq_class> bmat(m * m), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    mpq_class r = pb.b[i];
    for (std::size_t j = 0; j < n; ++j)
      if (state[j] != State::Basic && pb.at(i, j) != 0 && sgn(sol.x[j]) != 0) r -= pb.at(i, j) * sol.x[j];
    rhs[i] = r;
    for (std::size_t k = 0; k < m; ++k) bmat[i * m + k] = pb.at(i, basis[k]);
  }
  const auto xb = solve_dense(bmat, rhs, m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& bd = pb.bounds[basis[k]];
    if ((bd.lo && xb[k] < *bd.lo) || (bd.hi && xb[k] > *bd.hi))
      fail(ErrorCode::Verification, "simplex verification: floating basis is not primal feasible");
    sol.x[basis[k]] = xb[k];
  }

  std::vector<mpq_class> bt(m * m), cb(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) bt[k * m + i] = bmat[i * m + k];
  for (std::size_t k = 0; k < m; ++k) cb[k] = pb.cost[basis[k]];
  const auto y = solve_dense(std::move(bt), std::move(cb), m);
  for (std::size_t j = 0; j < n; ++j) {
    if (state[j] == State::Basic || pb.bounds[j].fixed()) continue;
    mpq_class dj = pb.cost[j];
    for (std::size_t i = 0; i < m; ++i)
      if (pb.at(i, j) != 0) dj -= y[i] * pb.at(i, j);
    const bool ok = state[j] == State::AtLower ? sgn(dj) <= 0 : state[j] == State::AtUpper ? sgn(dj) >= 0 : sgn(dj) == 0;
    if (!ok) fail(ErrorCode::Verification, "simplex verification: floating basis is not optimal");
  }

  sol.objective = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (pb.cost[j] != 0) sol.objective += pb.cost[j] * sol.x[j];
  return sol;
}

}  // namespace lowdeg::lp
