#include <cstdlib>
#include <stdexcept>

#include "support.hpp"
#include "tunnelkit/analysis.hpp"
#include "tunnelkit/fock.hpp"
#include "tunnelkit/planewave.hpp"
#include "tunnelkit/precision.hpp"

using namespace tunnelkit;
using tk_test::close_abs;
using tk_test::close_rel;

namespace {

struct EnvGuard {
  EnvGuard(const char* value) {
    if (value) setenv("TUNNELKIT_DIGITS", value, 1);
    else unsetenv("TUNNELKIT_DIGITS");
  }
  ~EnvGuard() { unsetenv("TUNNELKIT_DIGITS"); }
};

}  // namespace

TEST(FitTest, RecoversExactCubic) {
  PrecisionScope p(40);
  std::vector<std::pair<BigReal, BigReal>> pts;
  for (int i = 1; i <= 9; ++i) {
    BigReal g = BigReal("0.005") * BigReal(i);
    pts.emplace_back(g, g * BigReal(1.5) - g * g * 2 + g * g * g * BigReal("0.7"));
  }
  auto f = fit_corrections(pts, 3);
  ASSERT_EQ(f.coefficients.size(), 3u);
  // normal equations square the condition number: about half the digits survive
  const BigReal tol = BigReal::pow10(-working_digits() / 2);
  EXPECT_TRUE(close_abs(f.coefficients[0], BigReal(1.5), tol));
  EXPECT_TRUE(close_abs(f.coefficients[1], BigReal(-2), tol * 100));
  EXPECT_TRUE(close_abs(f.coefficients[2], BigReal("0.7"), tol * 10000));
  EXPECT_LT(f.residual_norm, tol);
  for (const auto& e : f.std_errors) EXPECT_LT(e, tol * 10000);
  EXPECT_EQ(f.points, 9u);
}

TEST(FitTest, NoisyLinearFitHasHonestErrors) {
  PrecisionScope p(30);
  std::vector<std::pair<BigReal, BigReal>> pts;
  // deterministic +-1e-4 wiggle around 2 g
  for (int i = 1; i <= 20; ++i) {
    BigReal g = BigReal("0.001") * BigReal(i);
    pts.emplace_back(g, g * 2 + BigReal(i % 2 ? 1e-4 : -1e-4));
  }
  auto f = fit_corrections(pts, 1);
  EXPECT_TRUE(close_abs(f.coefficients[0], BigReal(2), f.std_errors[0] * 4));
  EXPECT_GT(f.std_errors[0], BigReal(0));
}

TEST(FitTest, RejectsDegenerateInput) {
  PrecisionScope p(30);
  std::vector<std::pair<BigReal, BigReal>> same(5, {BigReal("0.01"), BigReal("0.02")});
  EXPECT_THROW(fit_corrections(same, 2), std::runtime_error);
  EXPECT_THROW(fit_corrections(same, 4), std::invalid_argument);
  EXPECT_THROW(fit_corrections(std::vector<std::pair<BigReal, BigReal>>(1, same[0]), 2), std::invalid_argument);
}

TEST(FitTest, ExpLawRecoversParameters) {
  PrecisionScope p(40);
  std::vector<std::pair<BigReal, BigReal>> pts;
  for (const char* gs : {"0.01", "0.013", "0.017", "0.02", "0.025", "0.03"}) {
    BigReal g(gs);
    pts.emplace_back(g, BigReal(3) / sqrt(g) * exp(-BigReal("0.4") / g));
  }
  auto f = exp_law_fit(pts);
  EXPECT_TRUE(close_rel(f.C, BigReal(3), BigReal::pow10(-20)));
  EXPECT_TRUE(close_rel(f.s, BigReal("0.4"), BigReal::pow10(-20)));
  EXPECT_LT(f.residual_norm, BigReal::pow10(-20));
  pts.resize(3);
  pts[2].first = BigReal("0.015");
  EXPECT_THROW(exp_law_fit(pts), std::invalid_argument);  // span below a factor of 2
}

TEST(PrecisionTest, PolicyDigits) {
  EXPECT_EQ(policy_digits(-13.3), 29);
  EXPECT_EQ(policy_digits(-2.0), 20);
  EXPECT_EQ(policy_digits(-60.0), 75);
  EXPECT_LT(expected_log10_splitting(PotentialSpec::double_well(BigReal("0.01"))), -25.0);
  EXPECT_EQ(expected_log10_splitting(PotentialSpec::anharmonic(BigReal(1), BigReal(1), BigReal(0))), 0.0);
}

TEST(PrecisionTest, EnvironmentOverride) {
  auto spec = PotentialSpec::double_well(BigReal("0.05"));
  {
    EnvGuard e(nullptr);
    EXPECT_FALSE(env_digits().has_value());
    EXPECT_EQ(resolve_digits(std::nullopt, spec), kDefaultDigits);
    auto deep = PotentialSpec::double_well(BigReal("0.01"));
    EXPECT_EQ(resolve_digits(std::nullopt, deep), policy_digits(expected_log10_splitting(deep)));
    EXPECT_GT(resolve_digits(std::nullopt, deep), kDefaultDigits);
  }
  {
    EnvGuard e("45");
    EXPECT_EQ(env_digits(), 45);
    EXPECT_EQ(resolve_digits(std::nullopt, spec), 45);
    EXPECT_EQ(resolve_digits(60, spec), 60);
  }
  {
    EnvGuard e("abc");
    EXPECT_THROW(env_digits(), std::invalid_argument);
  }
  {
    EnvGuard e("12");
    EXPECT_THROW(env_digits(), std::invalid_argument);
  }
  EXPECT_THROW(resolve_digits(10, spec), std::invalid_argument);
}

TEST(SplittingTest, DoubleWellPointMatchesFockBlocks) {
  PrecisionScope p(40);
  const BigReal g("0.04");
  ScanOptions o;
  o.digits = 40;
  auto pt = splitting_point(PotentialSpec::double_well(g), o);
  ASSERT_TRUE(pt.ok()) << pt.error;
  auto b = build_double_well(g, pt.M_used);
  BigReal want = block_lowest(b, Parity::Odd, 1)[0] - block_lowest(b, Parity::Even, 1)[0];
  EXPECT_TRUE(close_rel(pt.dE_num, want, BigReal::pow10(-25)));
  EXPECT_TRUE(close_rel(pt.rel_diff, (pt.dE_wkb - pt.dE_num) / pt.dE_wkb, BigReal::pow10(-25)));
  EXPECT_EQ(pt.digits_used, 40);
}

TEST(SplittingTest, CosinePointMatchesSectors) {
  PrecisionScope p(30);
  const BigReal g("0.04");
  ScanOptions o;
  o.digits = 30;
  auto pt = splitting_point(PotentialSpec::cosine(g, 2), o);
  ASSERT_TRUE(pt.ok()) << pt.error;
  auto e0 = sector_lowest(build_sector(2, 0, g, pt.M_used), 1).values[0];
  auto e1 = sector_lowest(build_sector(2, 1, g, pt.M_used), 1).values[0];
  EXPECT_TRUE(close_rel(pt.dE_num, e1 - e0, BigReal::pow10(-20)));
}

TEST(SplittingTest, LeadingCorrectionTrend) {
  PrecisionScope p(30);
  auto pts = splitting_scan(PotentialSpec::double_well(BigReal(1)), {BigReal("0.05"), BigReal("0.035"), BigReal("0.025")});
  ASSERT_EQ(pts.size(), 3u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ASSERT_TRUE(pts[i].ok()) << pts[i].error;
    EXPECT_GT(pts[i].rel_diff, BigReal(0));
    if (i > 0) EXPECT_LT(pts[i].rel_diff, pts[i - 1].rel_diff);
    // rel_diff / g approaches a constant near 1.48 for this well
    EXPECT_TRUE(close_abs(pts[i].rel_diff / pts[i].g, BigReal(1.48), BigReal(0.15))) << i;
  }
}

TEST(SplittingTest, ThreadCountDoesNotChangeScan) {
  PrecisionScope p(30);
  std::vector<BigReal> grid{BigReal("0.06"), BigReal("0.05"), BigReal("0.04"), BigReal("0.03")};
  ScanOptions one, three;
  three.threads = 3;
  auto a = splitting_scan(PotentialSpec::double_well(BigReal(1)), grid, one);
  auto b = splitting_scan(PotentialSpec::double_well(BigReal(1)), grid, three);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].g, b[i].g);
    EXPECT_EQ(a[i].dE_num, b[i].dE_num);
    EXPECT_EQ(a[i].rel_diff, b[i].rel_diff);
    EXPECT_EQ(a[i].digits_used, b[i].digits_used);
  }
}

TEST(SplittingTest, FailedPointsCarryErrors) {
  PrecisionScope p(30);
  auto pts = splitting_scan(PotentialSpec::anharmonic(BigReal(1), BigReal(1), BigReal(0)), {BigReal("0.05")});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_FALSE(pts[0].ok());
  EXPECT_THROW(splitting_scan(PotentialSpec::double_well(BigReal(1)), {BigReal(-1)}), std::invalid_argument);
}

TEST(TripleWellTest, LevelsMatchFock) {
  PrecisionScope p(40);
  const BigReal g("0.02"), delta("0.1");
  auto t = triple_well_levels(g, delta, 120);
  auto s = fock_spectrum(build_triple_well(g, delta, 120), 3).values;
  EXPECT_TRUE(close_rel(t.E0, s[0], BigReal::pow10(-30)));
  EXPECT_TRUE(close_rel(t.E1, s[1], BigReal::pow10(-30)));
  EXPECT_TRUE(close_rel(t.E2, s[2], BigReal::pow10(-30)));
}

TEST(TripleWellTest, CriticalDeformationEqualisesSpacing) {
  auto r = find_delta_c(BigReal("0.01"), {BigReal("0.05"), BigReal("0.3")});
  EXPECT_TRUE(close_abs(r.spacing_ratio, BigReal(1), BigReal(1e-3)));
  EXPECT_GT(r.delta_c, BigReal("0.1"));
  EXPECT_LT(r.delta_c, BigReal("0.2"));
  EXPECT_LT(r.levels.E0, r.levels.E1);
  EXPECT_LT(r.levels.E1, r.levels.E2);
  // moving off the optimum unbalances the spacings
  PrecisionScope p(r.digits_used);
  auto off = triple_well_levels(BigReal("0.01"), r.delta_c + BigReal("0.02"), r.levels.M);
  BigReal ratio_off = (off.E2 - off.E1) / (off.E1 - off.E0);
  EXPECT_GT(abs(ratio_off - BigReal(1)), abs(r.spacing_ratio - BigReal(1)) * 10);
}

TEST(TripleWellTest, RejectsBadWindow) {
  EXPECT_THROW(find_delta_c(BigReal("0.01"), {BigReal("0.3"), BigReal("0.1")}), std::invalid_argument);
  EXPECT_THROW(find_delta_c(BigReal(0), {BigReal("0.1"), BigReal("0.3")}), std::invalid_argument);
}
