#include "tunnelkit/paths.hpp"

#include <cstdlib>
#include <stdexcept>

namespace tunnelkit {

namespace {

mpz_class pow2(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return r;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

mpz_class triangle_same(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  mpz_class v = pow2(n) + (n % 2 == 0 ? 2 : -2);
  return v / 3;
}

mpz_class triangle_distinct(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  mpz_class v = pow2(n) - (n % 2 == 0 ? 1 : -1);
  return v / 3;
}

mpz_class triangle_distinct_recursive(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  mpz_class prev = 0, cur = 1;
  if (n == 0) return prev;
  for (int i = 2; i <= n; ++i) {
    mpz_class next = cur + 2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

mpz_class path_count(const PathQuery& q) {
  if (q.n < 0) throw std::invalid_argument("n must be >= 0");
  const int n = q.n;
  switch (q.setting) {
    case PathSetting::TwoMinimaPeriodic: {
      if (q.from < 0 || q.from > 1 || q.to < 0 || q.to > 1) throw std::invalid_argument("sites are 0 and 1");
      bool same = q.from == q.to;
      // every instanton may go either way round the circle
      if ((n % 2 == 0) != same) return 0;
      return pow2(n);
    }
    case PathSetting::ThreeMinimaPeriodic: {
      if (q.from < 0 || q.from > 2 || q.to < 0 || q.to > 2) throw std::invalid_argument("sites are 0, 1, 2");
      return q.from == q.to ? triangle_same(n) : triangle_distinct(n);
    }
    case PathSetting::InfiniteLine: {
      int d = std::abs(q.to - q.from);
      if (d > n || (n + d) % 2 != 0) return 0;
      return binomial(n, (n + d) / 2);
    }
    case PathSetting::TripleWell: {
      if (std::abs(q.from) > 1 || std::abs(q.to) > 1) throw std::invalid_argument("sites are -1, 0, 1");
      bool from_side = q.from != 0, to_side = q.to != 0;
      if (from_side != to_side) {
        // side <-> center: N_{2m+1} = 2^m
        if (n % 2 == 0) return 0;
        return pow2((n - 1) / 2);
      }
      if (n % 2 != 0) return 0;
      if (!from_side) return pow2(n / 2);  // center -> center
      if (n == 0) return q.from == q.to ? 1 : 0;
      return pow2(n / 2 - 1);  // side -> either side
    }
  }
  return 0;
}

BigReal counting_series(int k, const BigReal& x, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  BigReal sum;
  BigReal term(1);  // x^n / n!
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) term = term * x / BigReal(n);
    mpz_class c = path_count({PathSetting::InfiniteLine, n, 0, k});
    if (c != 0) sum += term * BigReal(c);
  }
  return sum;
}

}  // namespace tunnelkit
