#include <functional>

#include "support.hpp"
#include "tunnelkit/instanton.hpp"
#include "tunnelkit/paths.hpp"

using namespace tunnelkit;
using tk_test::close_abs;
using tk_test::close_rel;

namespace {

// Composite Simpson on [a, b] with n (even) panels.
BigReal simpson(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b, long n) {
  BigReal h = (b - a) / BigReal(n);
  BigReal acc = f(a) + f(b);
  for (long i = 1; i < n; ++i) acc += f(a + h * BigReal(i)) * BigReal(i % 2 ? 4L : 2L);
  return acc * h / 3;
}

// Walk enumeration by dynamic programming over sites.
mpz_class walks(PathSetting setting, int n, int from, int to) {
  std::function<std::vector<int>(int)> nbrs;
  int lo = 0, hi = 0;
  switch (setting) {
    case PathSetting::TwoMinimaPeriodic:
      lo = 0, hi = 1;
      nbrs = [](int s) { return std::vector<int>{1 - s, 1 - s}; };  // two distinct edges
      break;
    case PathSetting::ThreeMinimaPeriodic:
      lo = 0, hi = 2;
      nbrs = [](int s) { return std::vector<int>{(s + 1) % 3, (s + 2) % 3}; };
      break;
    case PathSetting::InfiniteLine:
      lo = from - n - 1, hi = from + n + 1;
      nbrs = [](int s) { return std::vector<int>{s - 1, s + 1}; };
      break;
    case PathSetting::TripleWell:
      lo = -1, hi = 1;
      nbrs = [](int s) { return s == 0 ? std::vector<int>{-1, 1} : std::vector<int>{0}; };
      break;
  }
  std::vector<mpz_class> cur(static_cast<std::size_t>(hi - lo + 1));
  cur[static_cast<std::size_t>(from - lo)] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<mpz_class> next(cur.size());
    for (int s = lo; s <= hi; ++s) {
      const auto& c = cur[static_cast<std::size_t>(s - lo)];
      if (c == 0) continue;
      for (int t : nbrs(s))
        if (t >= lo && t <= hi) next[static_cast<std::size_t>(t - lo)] += c;
    }
    cur = std::move(next);
  }
  if (to < lo || to > hi) return 0;
  return cur[static_cast<std::size_t>(to - lo)];
}

BigReal bessel_I(int k, const BigReal& x) {
  // I_k(x) = sum_m (x/2)^{2m+k} / (m! (m+k)!)
  BigReal half = x / 2, term = BigReal(1), acc;
  for (int j = 1; j <= k; ++j) term = term * half / BigReal(static_cast<long>(j));
  for (long m = 0; m < 200; ++m) {
    acc += term;
    term = term * half * half / BigReal((m + 1) * (m + 1 + k));
  }
  return acc;
}

}  // namespace

TEST(InstantonTest, ActionClosedForms) {
  PrecisionScope p(40);
  const BigReal g("0.02");
  EXPECT_TRUE(close_rel(action_S0(PotentialSpec::double_well(g)), BigReal(2) / 3, BigReal::pow10(-35)));
  const BigReal pi2 = BigReal::pi() * BigReal::pi();
  EXPECT_TRUE(close_rel(action_S0(PotentialSpec::cosine(g, 2)), BigReal(2) / pi2, BigReal::pow10(-35)));
  auto w = predict(PotentialSpec::double_well(g));
  EXPECT_TRUE(close_rel(w.S0, BigReal(2) / (g * 3), BigReal::pow10(-35)));
}

TEST(InstantonTest, TripleWellActionMatchesQuadrature) {
  PrecisionScope p(40);
  for (const char* d : {"0", "0.2"}) {
    auto spec = PotentialSpec::triple_well(BigReal(1), BigReal(d));
    // adjacent minima at 0 and 1, s = integral of sqrt(2 V)
    BigReal want = simpson([&](const BigReal& z) { return sqrt(max(BigReal(0), eval(spec, z) * 2)); }, BigReal(0),
                           BigReal(1), 4000);
    EXPECT_TRUE(close_rel(action_S0(spec), want, BigReal(1e-8))) << d;
  }
}

TEST(InstantonTest, DoubleWellProfileIsTanh) {
  PrecisionScope p(40);
  auto pr = instanton_profile(PotentialSpec::double_well(BigReal("0.02")), BigReal(40), 401);
  EXPECT_TRUE(close_abs(pr.z.front(), BigReal(-1), BigReal::pow10(-30)));
  EXPECT_TRUE(close_abs(pr.z.back(), BigReal(1), BigReal::pow10(-30)));
  for (std::size_t i = 0; i < pr.tau.size(); ++i) {
    if (abs(pr.tau[i]) > BigReal(10)) continue;
    EXPECT_TRUE(close_abs(pr.z[i], tanh(pr.tau[i] / 2), BigReal(1e-8))) << i;
    EXPECT_TRUE(close_abs(pr.zdot[i], (BigReal(1) - pr.z[i] * pr.z[i]) / 2, BigReal(1e-8))) << i;
  }
}

TEST(InstantonTest, PlateauConstants) {
  PrecisionScope p(40);
  const BigReal g("0.02");
  EXPECT_TRUE(close_rel(predict(PotentialSpec::double_well(g)).A, BigReal(2), BigReal(1e-6)));
  EXPECT_TRUE(close_rel(predict(PotentialSpec::cosine(g, 2)).A, BigReal(2) / BigReal::pi(), BigReal(1e-6)));
  auto pr = instanton_profile(PotentialSpec::double_well(g), BigReal(80), 1601);
  auto bal = asymptotic_A(pr, AConvention::Balanced);
  auto tr = asymptotic_A(pr, AConvention::Transposed);
  EXPECT_TRUE(close_rel(bal.A, tr.A, BigReal::pow10(-25)));
  EXPECT_TRUE(close_rel(bal.A, sqrt(bal.A_plus * bal.A_minus), BigReal::pow10(-25)));
}

TEST(InstantonTest, DoubleWellSplittingIdentity) {
  PrecisionScope p(40);
  for (const char* gs : {"0.02", "0.05"}) {
    BigReal g(gs);
    auto w = predict(PotentialSpec::double_well(g));
    BigReal closed = BigReal(4) / sqrt(g * BigReal::pi()) * exp(-BigReal(2) / (g * 3));
    EXPECT_TRUE(close_rel(w.splitting, closed, BigReal(1e-6))) << gs;
    EXPECT_TRUE(close_rel(w.splitting, w.prefactor * exp(-w.S0), BigReal::pow10(-30)));
    ASSERT_EQ(w.levels.size(), 2u);
    EXPECT_TRUE(close_rel(w.levels[1].energy - w.levels[0].energy, w.splitting, BigReal::pow10(-20)));
  }
}

TEST(InstantonTest, AmplitudeColumnsAreOrthogonal) {
  PrecisionScope p(40);
  const BigReal g("0.02");
  for (auto spec : {PotentialSpec::double_well(g), PotentialSpec::cosine(g, 3), PotentialSpec::triple_well(g, BigReal(0))}) {
    auto w = predict(spec);
    ASSERT_FALSE(w.amplitudes.empty());
    const std::size_t n = w.amplitudes.begin()->second.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        BigReal dot;
        for (const auto& [label, col] : w.amplitudes) dot += col[i] * col[j];
        // every minimum carries the harmonic peak pi^{-1/4}
        BigReal want = i == j ? BigReal(1) / sqrt(BigReal::pi()) : BigReal(0);
        EXPECT_TRUE(close_abs(dot, want, BigReal::pow10(-30))) << spec.describe() << " " << i << "," << j;
      }
  }
}

TEST(InstantonTest, TripleWellCentralAmplitudeFactor) {
  PrecisionScope p(40);
  const BigReal delta("0.2");
  auto w = predict(PotentialSpec::triple_well(BigReal("0.02"), delta));
  const BigReal om = sqrt(BigReal(1) + delta);
  BigReal factor = sqrt(sqrt(om * om * 2 / (BigReal(1) + om)));
  EXPECT_TRUE(close_rel(w.amplitudes.at("0")[0], w.amplitudes.at("-a")[1] * factor, BigReal::pow10(-30)));
  EXPECT_TRUE(close_rel(w.amplitudes.at("-a")[0] * 2, w.amplitudes.at("-a")[1] * sqrt(BigReal(2)), BigReal::pow10(-30)));
  EXPECT_TRUE(w.amplitudes.at("0")[1].is_zero());
}

TEST(InstantonTest, LevelPatterns) {
  PrecisionScope p(40);
  const BigReal g("0.02");
  auto k3 = predict(PotentialSpec::cosine(g, 3));
  ASSERT_EQ(k3.levels.size(), 2u);
  EXPECT_EQ(k3.levels[0].degeneracy, 1);
  EXPECT_EQ(k3.levels[1].degeneracy, 2);
  for (const char* d : {"0", "0.2"}) {
    auto tw = predict(PotentialSpec::triple_well(g, BigReal(d)));
    ASSERT_EQ(tw.levels.size(), 3u);
    EXPECT_TRUE(close_abs(tw.levels[0].energy + tw.levels[2].energy, tw.levels[1].energy * 2, BigReal::pow10(-25)));
  }
  EXPECT_TRUE(close_abs(predict(PotentialSpec::triple_well(g, BigReal("0.2"))).omega, sqrt(BigReal("1.2")),
                        BigReal::pow10(-25)));
}

TEST(InstantonTest, BandDispersion) {
  PrecisionScope p(40);
  for (const char* gs : {"0.01", "0.02", "0.05"}) {
    BigReal g(gs);
    EXPECT_TRUE(close_abs(band_dispersion(g, BigReal(0)) + band_dispersion(g, BigReal::pi()), BigReal(1),
                          BigReal::pow10(-35)));
    EXPECT_TRUE(close_abs(band_dispersion(g, BigReal::pi()) - band_dispersion(g, BigReal(0)), band_width(g),
                          BigReal::pow10(-35)));
    EXPECT_TRUE(close_rel(band_width(g), predict(PotentialSpec::cosine(g, 2)).splitting, BigReal(1e-6)));
  }
}

TEST(InstantonTest, GelfandYaglom) {
  PrecisionScope p(40);
  for (const char* Ts : {"30", "40"}) {
    BigReal T(Ts);
    EXPECT_TRUE(close_rel(gelfand_yaglom_free(T), sinh(T), BigReal(1e-10))) << Ts;
  }
  auto dw = gelfand_yaglom_check(PotentialSpec::double_well(BigReal("0.02")), BigReal(40));
  EXPECT_TRUE(close_rel(dw.closed_form, sqrt(BigReal(12)), BigReal::pow10(-30)));
  EXPECT_TRUE(close_rel(dw.kappa_sqrt_lambda0, dw.closed_form, BigReal(1e-4)));
  auto cs = gelfand_yaglom_check(PotentialSpec::cosine(BigReal("0.02"), 2), BigReal(40));
  EXPECT_TRUE(close_rel(cs.kappa_sqrt_lambda0, cs.closed_form, BigReal(1e-4)));
  EXPECT_THROW(gelfand_yaglom_check(PotentialSpec::double_well(BigReal("0.02")), BigReal(10)), std::invalid_argument);
}

TEST(PathCountTest, MatchesWalkEnumeration) {
  for (int n = 0; n <= 14; ++n) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        EXPECT_EQ(path_count({PathSetting::TwoMinimaPeriodic, n, a, b}), walks(PathSetting::TwoMinimaPeriodic, n, a, b));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        EXPECT_EQ(path_count({PathSetting::ThreeMinimaPeriodic, n, a, b}),
                  walks(PathSetting::ThreeMinimaPeriodic, n, a, b));
    for (int k = -4; k <= 4; ++k)
      EXPECT_EQ(path_count({PathSetting::InfiniteLine, n, 2, 2 + k}), walks(PathSetting::InfiniteLine, n, 2, 2 + k));
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        EXPECT_EQ(path_count({PathSetting::TripleWell, n, a, b}), walks(PathSetting::TripleWell, n, a, b));
  }
}

TEST(PathCountTest, TriangleIdentities) {
  for (int n = 0; n <= 30; ++n) {
    mpz_class two_n = mpz_class(1) << n;
    EXPECT_EQ(triangle_same(n) + triangle_distinct(n) * 2, two_n);
    EXPECT_EQ(triangle_distinct(n), triangle_distinct_recursive(n));
  }
}

TEST(PathCountTest, CountingSeriesIsBessel) {
  PrecisionScope p(40);
  for (int k : {0, 1, 3})
    for (const char* xs : {"0.3", "1.5"}) {
      BigReal x(xs);
      EXPECT_TRUE(close_rel(counting_series(k, x, 80), bessel_I(k, x * 2), BigReal::pow10(-30))) << k << " " << xs;
      EXPECT_TRUE(close_rel(counting_series(-k, x, 80), counting_series(k, x, 80), BigReal::pow10(-35)));
    }
}
