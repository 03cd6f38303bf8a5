#pragma once

#include <gmpxx.h>

#include "tunnelkit/bigreal.hpp"

namespace tunnelkit {

// Multi-instanton trajectories are walks on a small graph of minima:
//   TwoMinimaPeriodic   two sites joined by two distinct edges (circle, K=2)
//   ThreeMinimaPeriodic triangle (circle, K=3)
//   InfiniteLine        the integers, steps of +-1
//   TripleWell          path graph left(-1) - center(0) - right(+1)
enum class PathSetting { TwoMinimaPeriodic, ThreeMinimaPeriodic, InfiniteLine, TripleWell };

struct PathQuery {
  PathSetting setting = PathSetting::TwoMinimaPeriodic;
  int n = 0;     // number of instantons (walk length)
  int from = 0;  // site labels: 0..K-1 on circles, any integer on the line, -1/0/1 for the triple well
  int to = 0;
};

// Number of topologically distinct n-instanton paths, from closed forms.
mpz_class path_count(const PathQuery& q);

// Triangle counts: same endpoint c0(n) = (2^n + 2(-1)^n)/3, distinct c1(n) = (2^n - (-1)^n)/3.
mpz_class triangle_same(int n);
mpz_class triangle_distinct(int n);
// c1 by the recursion c1(n) = c1(n-1) + 2 c1(n-2), c1(0)=0, c1(1)=1.
mpz_class triangle_distinct_recursive(int n);

// sum_{n <= n_max} N_n(k) x^n / n! for the line with displacement k; the
// full series is I_|k|(2x).
BigReal counting_series(int k, const BigReal& x, int n_max);

}  // namespace tunnelkit
