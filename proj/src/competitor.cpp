#include "lowdeg/competitor.hpp"

#include "lowdeg/error.hpp"
#include "lowdeg/transform.hpp"
#include "simplex.hpp"

namespace lowdeg {

namespace {

void check_lp_size(const BooleanFunction& f, int d) {
  if (f.dim() > kMaxLpDim) fail(ErrorCode::Limit, "LP modules are limited to p <= " + std::to_string(kMaxLpDim));
  check_degree(f.dim(), d);
}

// Runs the simplex in rationals for small p, otherwise in double followed by an
// exact replay of the final basis. A basis that fails the replay but is still
// primal feasible is finished with exact pivots; anything else is an error.
lp::Solution<mpq_class> solve_exact(const lp::Problem& pb, int p, bool& exact_pivots) {
  exact_pivots = p <= kMaxExactLpDim;
  if (exact_pivots) return lp::solve<mpq_class>(pb);
  const auto approx = lp::solve<double>(pb);
  try {
    return lp::verify_basis(pb, approx.basis, approx.state);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Verification) throw;
    try {
      return lp::solve<mpq_class>(pb, lp::warm_start<mpq_class>(pb, approx.basis, approx.state));
    } catch (const Error& inner) {
      if (inner.code() != ErrorCode::Internal) throw;
      fail(ErrorCode::Verification, std::string(e.what()) + "; exact continuation failed: " + inner.what());
    }
  }
}

}  // namespace

CompetitorResult max_competitor(const BooleanFunction& f, int d) {
  check_lp_size(f, d);
  CompetitorResult result;
  result.optimum = 0;
  if (d == f.dim()) return result;  // all 2^p coefficients pinned: h = 0

  // Variables u(x) = -f(x) h(x) in [0, 2], then one fixed artificial per row.
  // Row J: sum_x f(x) w_J(x) u(x) = 0, i.e. h has no mass on w_J.
  const auto masks = low_degree_masks(f.dim(), d);
  const std::size_t n = f.size(), k = masks.size();
  lp::Problem pb;
  pb.rows = k;
  pb.cols = n + k;
  pb.a.assign(pb.rows * pb.cols, 0);
  pb.b.assign(k, 0);
  pb.cost.assign(pb.cols, 0);
  pb.bounds.resize(pb.cols);
  for (std::size_t x = 0; x < n; ++x) {
    pb.cost[x] = 1;
    pb.bounds[x] = {0, 2};
    for (std::size_t r = 0; r < k; ++r) pb.a[r * pb.cols + x] = f.value(x) * walsh(masks[r], x);
  }
  for (std::size_t r = 0; r < k; ++r) {
    pb.a[r * pb.cols + n + r] = 1;
    pb.bounds[n + r] = {0, 0};
    pb.start_basis.push_back(n + r);
  }

  const auto sol = solve_exact(pb, f.dim(), result.exact_pivots);
  result.optimum = sol.objective;
  if (sgn(result.optimum) > 0) {
    CompetitorWitness w{f.dim(), d, std::vector<mpq_class>(n), result.optimum};
    for (std::size_t x = 0; x < n; ++x) w.h[x] = -f.value(x) * sol.x[x];
    if (!verify_competitor(f, w)) fail(ErrorCode::Verification, "competitor witness failed exact re-verification");
    result.witness = std::move(w);
  }
  return result;
}

bool verify_competitor(const BooleanFunction& f, const CompetitorWitness& w) {
  if (w.p != f.dim() || w.h.size() != f.size()) return false;
  mpq_class objective = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const mpq_class g = f.value(x) + w.h[x];
    if (g < -1 || g > 1) return false;
    objective -= f.value(x) * w.h[x];
  }
  if (objective != w.objective) return false;
  for (auto mask : low_degree_masks(f.dim(), w.d)) {
    mpq_class s = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x)
      if (sgn(w.h[x]) != 0) s += walsh(mask, x) * w.h[x];
    if (sgn(s) != 0) return false;
  }
  return true;
}

mpq_class certificate_margin(const BooleanFunction& f, const SignCertificate& c) {
  require(c.masks.size() == c.coeffs.size(), "certificate: mask and coefficient counts differ");
  std::optional<mpq_class> margin;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    mpq_class q = 0;
    for (std::size_t k = 0; k < c.masks.size(); ++k)
      if (sgn(c.coeffs[k]) != 0) q += walsh(c.masks[k], x) * c.coeffs[k];
    q *= f.value(x);
    if (!margin || q < *margin) margin = q;
  }
  return *margin;
}

std::optional<SignCertificate> sign_certificate(const BooleanFunction& f, int d) {
  check_lp_size(f, d);
  // Phase-one LP for f(x) sum_J c_J w_J(x) - s_x + a_x = 1 with c free,
  // s, a >= 0; feasible iff max -sum a_x reaches 0.
  const auto masks = low_degree_masks(f.dim(), d);
  const std::size_t n = f.size(), k = masks.size();
  lp::Problem pb;
  pb.rows = n;
  pb.cols = k + 2 * n;
  pb.a.assign(pb.rows * pb.cols, 0);
  pb.b.assign(n, 1);
  pb.cost.assign(pb.cols, 0);
  pb.bounds.resize(pb.cols);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < k; ++j) pb.a[x * pb.cols + j] = f.value(x) * walsh(masks[j], x);
    pb.a[x * pb.cols + k + x] = -1;
    pb.bounds[k + x] = {0, std::nullopt};
    pb.a[x * pb.cols + k + n + x] = 1;
    pb.bounds[k + n + x] = {0, std::nullopt};
    pb.cost[k + n + x] = -1;
    pb.start_basis.push_back(k + n + x);
  }

  bool exact = true;
  const auto sol = solve_exact(pb, f.dim(), exact);
  if (sgn(sol.objective) < 0) return std::nullopt;

  SignCertificate c{f.dim(), d, masks, std::vector<mpq_class>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(k)), 0};
  const mpq_class margin = certificate_margin(f, c);
  if (sgn(margin) <= 0) fail(ErrorCode::Verification, "sign certificate failed exact re-verification");
  for (auto& v : c.coeffs) v /= margin;
  c.margin = certificate_margin(f, c);
  return c;
}

}  // namespace lowdeg
