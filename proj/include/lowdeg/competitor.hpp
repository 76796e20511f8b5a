#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "lowdeg/boolean_function.hpp"

namespace lowdeg {

inline constexpr int kMaxLpDim = 8;
// Up to this dimension the simplex pivots in exact rationals; above it the
// pivots run in double and the final basis is re-verified exactly.
inline constexpr int kMaxExactLpDim = 7;

// Bounded competitor f + h with h orthogonal to every w_J, |J| <= d, and
// f + h in [-1,1] pointwise. objective = sum_x -f(x) h(x).
struct CompetitorWitness {
  int p = 0;
  int d = 0;
  std::vector<mpq_class> h;
  mpq_class objective;
};

struct CompetitorResult {
  mpq_class optimum;
  // Present iff optimum > 0.
  std::optional<CompetitorWitness> witness;
  bool exact_pivots = true;
};

// max sum_x -f(x) h(x) over the set above. Optimum 0 iff f is the only bounded
// function with its degree-<=d coefficients.
CompetitorResult max_competitor(const BooleanFunction& f, int d);

// Exact re-check of the witness constraints.
bool verify_competitor(const BooleanFunction& f, const CompetitorWitness& w);

// Coefficients c_J (|J| <= d, increasing mask order) of q = sum c_J w_J with
// f(x) q(x) >= margin > 0 everywhere; normalized so that margin == 1.
struct SignCertificate {
  int p = 0;
  int d = 0;
  std::vector<std::uint64_t> masks;
  std::vector<mpq_class> coeffs;
  mpq_class margin;
};

std::optional<SignCertificate> sign_certificate(const BooleanFunction& f, int d);

// Exact margin min_x f(x) sum_J c_J w_J(x).
mpq_class certificate_margin(const BooleanFunction& f, const SignCertificate& c);

}  // namespace lowdeg
