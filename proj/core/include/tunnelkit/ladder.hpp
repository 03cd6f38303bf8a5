#pragma once

#include <gmpxx.h>

#include <vector>

namespace tunnelkit {

// Polynomial in the occupation number n, coefficients ascending.
using RationalPoly = std::vector<mpq_class>;

mpq_class eval_poly(const RationalPoly& p, const mpq_class& n);

// X^k = sum_j q_{k,j}(N) times a j-step ladder, with X = (a + a^dagger)/sqrt(2):
//   <n+j| X^k |n> = q_{k,j}(n) * sqrt((n+j)!/n!)   for j >= 0
//   <n+j| X^k |n> = q_{k,j}(n) * sqrt(n!/(n+j)!)   for j < 0
// For odd k every q carries an extra overall factor 1/sqrt(2), which is kept
// out of the rational table and flagged by has_inverse_sqrt2.
struct LadderPolynomial {
  int k = 0;
  std::vector<RationalPoly> table;  // table[j + k]
  bool has_inverse_sqrt2 = false;

  const RationalPoly& q(int j) const;
};

LadderPolynomial ladder_expand(int k);

}  // namespace tunnelkit
