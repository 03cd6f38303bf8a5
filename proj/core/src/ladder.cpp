#include "tunnelkit/ladder.hpp"

#include <stdexcept>

namespace tunnelkit {

mpq_class eval_poly(const RationalPoly& p, const mpq_class& n) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * n + p[i];
  return acc;
}

namespace {

void add_into(RationalPoly& dst, const RationalPoly& src) {
  if (dst.size() < src.size()) dst.resize(src.size(), mpq_class(0));
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

// p(n) * (n + c)
RationalPoly times_linear(const RationalPoly& p, long c) {
  RationalPoly out(p.size() + 1, mpq_class(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] += p[i] * c;
  }
  return out;
}

void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

const RationalPoly& LadderPolynomial::q(int j) const {
  static const RationalPoly zero;
  if (j < -k || j > k) return zero;
  return table[static_cast<std::size_t>(j + k)];
}

LadderPolynomial ladder_expand(int k) {
  if (k < 1 || k > 24) throw std::invalid_argument("ladder_expand supports 1 <= k <= 24");

  // P_j for (a + a^dagger)^m, starting at m = 0.
  std::vector<RationalPoly> cur(1, RationalPoly{mpq_class(1)});
  for (int m = 1; m <= k; ++m) {
    std::vector<RationalPoly> next(static_cast<std::size_t>(2 * m + 1));
    const int prev = m - 1;
    for (int j = -prev; j <= prev; ++j) {
      const RationalPoly& p = cur[static_cast<std::size_t>(j + prev)];
      if (p.empty()) continue;
      // raising part lands on j+1
      RationalPoly up = j >= 0 ? p : times_linear(p, j + 1);
      add_into(next[static_cast<std::size_t>(j + 1 + m)], up);
      // lowering part lands on j-1
      RationalPoly down = j > 0 ? times_linear(p, j) : p;
      add_into(next[static_cast<std::size_t>(j - 1 + m)], down);
    }
    for (auto& p : next) trim(p);
    cur = std::move(next);
  }

  LadderPolynomial out;
  out.k = k;
  out.has_inverse_sqrt2 = (k % 2) == 1;
  mpq_class scale(1);
  for (int i = 0; i < k / 2; ++i) scale /= 2;
  out.table = std::move(cur);
  for (auto& p : out.table)
    for (auto& c : p) c *= scale;
  return out;
}

}  // namespace tunnelkit
