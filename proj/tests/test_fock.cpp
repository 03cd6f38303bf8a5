#include <algorithm>
#include <map>
#include <stdexcept>

#include "support.hpp"
#include "tunnelkit/eigen.hpp"
#include "tunnelkit/fock.hpp"
#include "tunnelkit/ladder.hpp"

using namespace tunnelkit;
using tk_test::close_abs;
using tk_test::close_rel;

namespace {

// (a + a^dagger)^k |n>, amplitudes written as c_j sqrt(j!/n!) with integer c_j.
std::map<long, mpz_class> raise_lower_power(int k, long n) {
  std::map<long, mpz_class> state{{n, 1}};
  for (int step = 0; step < k; ++step) {
    std::map<long, mpz_class> next;
    for (const auto& [j, c] : state) {
      next[j + 1] += c;                    // a^dagger
      if (j > 0) next[j - 1] += c * j;     // a
    }
    state = std::move(next);
  }
  return state;
}

BigReal entry_formula(const BigReal& eps, const BigReal& g, const BigReal& c, long m, long n) {
  // matrix elements of P^2/2 + eps X^2/2 + g X^4/4 + c, written out term by term
  BigReal N(n);
  if (m == n) return (N + BigReal(0.5)) * (BigReal(1) + eps) / 2 + g / 16 * (N * N * 6 + N * 6 + 3) + c;
  if (m == n - 2) return (g * (N - BigReal(0.5)) - 1 + eps) / 4 * sqrt(N * (N - 1));
  if (m == n + 2) return (g * (N + BigReal(1.5)) - 1 + eps) / 4 * sqrt((N + 1) * (N + 2));
  if (m == n - 4) return g / 16 * sqrt(N * (N - 1) * (N - 2) * (N - 3));
  if (m == n + 4) return g / 16 * sqrt((N + 1) * (N + 2) * (N + 3) * (N + 4));
  return BigReal(0);
}

}  // namespace

TEST(LadderTest, QuotedPolynomials) {
  auto q4 = ladder_expand(4);
  for (long n = 0; n < 6; ++n) {
    mpq_class N(n);
    EXPECT_EQ(eval_poly(q4.q(0), N), mpq_class(3, 4) + mpq_class(3, 2) * N + mpq_class(3, 2) * N * N);
    EXPECT_EQ(eval_poly(q4.q(4), N), mpq_class(1, 4));
    EXPECT_EQ(eval_poly(ladder_expand(2).q(0), N), N + mpq_class(1, 2));
    EXPECT_EQ(eval_poly(ladder_expand(3).q(0), N), 0);
  }
  EXPECT_TRUE(ladder_expand(3).has_inverse_sqrt2);
  EXPECT_FALSE(ladder_expand(4).has_inverse_sqrt2);
}

TEST(LadderTest, MatchesBruteForceOperatorAlgebra) {
  for (int k = 1; k <= 10; ++k) {
    auto lp = ladder_expand(k);
    // X^k = (a + a^dagger)^k / 2^{k/2}; the odd-k 1/sqrt 2 is kept outside q
    mpz_class pow2 = mpz_class(1) << (k / 2);
    for (long n = 0; n <= 12; ++n) {
      auto state = raise_lower_power(k, n);
      for (int j = -k; j <= k; ++j) {
        long m = n + j;
        if (m < 0) continue;
        mpq_class want = 0;
        auto it = state.find(m);
        if (it != state.end()) {
          want = mpq_class(it->second) / mpq_class(pow2);
          if (j < 0) {
            // amplitude c sqrt(m!/n!) = c (m!/n!) sqrt(n!/m!)
            mpz_class ratio = 1;
            for (long t = m + 1; t <= n; ++t) ratio *= t;
            want /= mpq_class(ratio);
          }
        }
        EXPECT_EQ(eval_poly(lp.q(j), mpq_class(n)), want) << "k=" << k << " n=" << n << " j=" << j;
      }
    }
  }
}

TEST(FockMatrixTest, HarmonicIsDiagonal) {
  PrecisionScope p(30);
  auto b = build_anharmonic(BigReal(1), BigReal(0), BigReal(0), 20);
  for (std::size_t i = 0; i <= 20; ++i) {
    EXPECT_TRUE(close_abs(b.matrix.get(i, i), BigReal(static_cast<long>(i)) + BigReal(0.5), BigReal::pow10(-28)));
    for (std::size_t j = i + 1; j <= std::min<std::size_t>(20, i + 4); ++j) EXPECT_TRUE(b.matrix.get(i, j).is_zero());
  }
}

TEST(FockMatrixTest, QuotedEntries) {
  PrecisionScope p(40);
  auto b = build_anharmonic(BigReal(1), BigReal(1), BigReal(0), 10);
  EXPECT_TRUE(close_abs(b.matrix.get(0, 2), sqrt(BigReal(2)) * 3 / 8, BigReal::pow10(-36)));
  EXPECT_TRUE(close_abs(b.matrix.get(0, 0), BigReal(11) / 16, BigReal::pow10(-36)));
}

TEST(FockMatrixTest, MatchesWrittenOutFormula) {
  PrecisionScope p(40);
  const BigReal eps("0.7"), g("0.3"), c("0.2");
  const int M = 24;
  auto b = build_anharmonic(eps, g, c, M);
  for (long m = 0; m <= M; ++m)
    for (long n = 0; n <= M; ++n) {
      BigReal want = entry_formula(eps, g, c, m, n);
      BigReal got = b.matrix.get(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
      EXPECT_TRUE(close_abs(got, want, BigReal::pow10(-34) * max(BigReal(1), abs(want)))) << m << "," << n;
    }
}

TEST(FockMatrixTest, BandStructureAndSymmetry) {
  PrecisionScope p(30);
  for (auto b : {build_anharmonic(BigReal(1), BigReal(1), BigReal(0), 30), build_double_well(BigReal("0.05"), 30),
                 build_triple_well(BigReal("0.05"), BigReal("0.1"), 30)}) {
    const std::size_t n = b.matrix.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(b.matrix.get(i, j), b.matrix.get(j, i));
        if ((i + j) % 2 == 1) EXPECT_TRUE(b.matrix.get(i, j).is_zero());
      }
  }
  EXPECT_EQ(build_anharmonic(BigReal(1), BigReal(1), BigReal(0), 30).matrix.halfband(), 4u);
  EXPECT_EQ(build_triple_well(BigReal("0.05"), BigReal(0), 30).matrix.halfband(), 10u);
}

TEST(FockSpectrumTest, QuarticGroundState) {
  PrecisionScope p(30);
  auto s = fock_spectrum(build_anharmonic(BigReal(1), BigReal(1), BigReal(0), 40), 7);
  EXPECT_TRUE(close_rel(s.values[0], BigReal("0.620927"), BigReal(1e-6)));
  EXPECT_EQ(s.parities[0], Parity::Even);
  EXPECT_EQ(s.parities[1], Parity::Odd);
}

TEST(FockSpectrumTest, DoubleWellSplittingScale) {
  PrecisionScope p(40);
  const BigReal g("0.0625");
  auto b = build_double_well(g, 200);
  BigReal dE = block_lowest(b, Parity::Odd, 1)[0] - block_lowest(b, Parity::Even, 1)[0];
  BigReal scale = BigReal(4) / sqrt(g * BigReal::pi()) * exp(-BigReal(2) / (g * 3));
  EXPECT_TRUE(close_rel(dE, scale, BigReal(0.25)));
}

TEST(FockSpectrumTest, WeakCouplingApproachesHarmonic) {
  PrecisionScope p(30);
  auto b = build_double_well(BigReal("0.001"), 2000);
  auto e0 = block_lowest(b, Parity::Even, 1)[0];
  EXPECT_TRUE(close_abs(e0, BigReal(0.5), BigReal(5e-3)));
}

TEST(FockSpectrumTest, TripleWellLowestTriplet) {
  PrecisionScope p(40);
  const BigReal g("0.025");
  auto s = fock_spectrum(build_triple_well(g, BigReal(0), default_fock_cutoff(g)), 3);
  BigReal gap = s.values[1] - s.values[0], tiny = s.values[2] - s.values[1];
  EXPECT_GT(gap, g / 10);
  EXPECT_LT(gap, g * 10);
  EXPECT_LT(tiny, gap * BigReal(1e-3));
}

TEST(FockSpectrumTest, ParityBlocksReproduceFullSpectrum) {
  PrecisionScope p(30);
  for (int M : {20, 41, 60}) {
    auto b = build_double_well(BigReal("0.08"), M);
    auto full = dense_eigen_small(b.matrix, false);
    auto even = dense_eigen_small(parity_block(b, Parity::Even), false);
    auto odd = dense_eigen_small(parity_block(b, Parity::Odd), false);
    std::vector<BigReal> u = even.values;
    u.insert(u.end(), odd.values.begin(), odd.values.end());
    std::sort(u.begin(), u.end());
    ASSERT_EQ(u.size(), full.values.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      EXPECT_TRUE(close_abs(u[i], full.values[i], BigReal::pow10(-22) * max(BigReal(1), abs(full.values[i]))));
  }
}

TEST(FockSpectrumTest, VariationalMonotonicity) {
  PrecisionScope p(30);
  std::vector<BigReal> prev;
  for (int M : {16, 24, 32, 48, 64}) {
    auto s = fock_spectrum(build_double_well(BigReal("0.05"), M), 6);
    if (!prev.empty())
      for (std::size_t i = 0; i < 6; ++i) EXPECT_LE(s.values[i], prev[i] + BigReal::pow10(-24)) << "M=" << M;
    prev = s.values;
  }
}

TEST(FockSpectrumTest, ConvergenceScan) {
  PrecisionScope p(30);
  auto harm = convergence_scan(PotentialSpec::anharmonic(BigReal(1), BigReal(0), BigReal(0)), {4, 8, 12}, {0, 3},
                               BigReal::pow10(-20));
  for (const auto& row : harm.rows) {
    EXPECT_TRUE(close_abs(row.energies[1], BigReal(3.5), BigReal::pow10(-22)));
  }
  EXPECT_TRUE(harm.rows.back().converged);

  auto dw = convergence_scan(PotentialSpec::double_well(BigReal("0.04")), {40, 50, 60, 80}, {0, 1}, BigReal(1e-3));
  for (std::size_t r = 1; r < dw.rows.size(); ++r) {
    BigReal split0 = dw.rows[r - 1].energies[1] - dw.rows[r - 1].energies[0];
    BigReal split1 = dw.rows[r].energies[1] - dw.rows[r].energies[0];
    EXPECT_TRUE(close_rel(split1, split0, BigReal(1e-3)));
    for (std::size_t l = 0; l < 2; ++l) EXPECT_LE(dw.rows[r].energies[l], dw.rows[r - 1].energies[l] + BigReal::pow10(-24));
  }
}

TEST(WavefunctionTest, HermiteFunctions) {
  PrecisionScope p(30);
  std::vector<BigReal> xs{BigReal(-1.5), BigReal(0), BigReal(0.3), BigReal(2)};
  std::vector<BigReal> e0(6), e1(6);
  e0[0] = 1;
  e1[1] = 1;
  auto psi0 = wavefunction(e0, xs);
  auto psi1 = wavefunction(e1, xs);
  const BigReal norm = BigReal(1) / sqrt(sqrt(BigReal::pi()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    EXPECT_TRUE(close_abs(psi0[i], norm * exp(-xs[i] * xs[i] / 2), BigReal::pow10(-27)));
  EXPECT_TRUE(psi1[1].is_zero() || abs(psi1[1]) < BigReal::pow10(-28));
  auto m = wavefunction(e1, {BigReal(-0.3)});
  EXPECT_TRUE(close_abs(m[0], -psi1[2], BigReal::pow10(-27)));
}

TEST(WavefunctionTest, DoubleWellGroundStatePeaksAtMinima) {
  PrecisionScope p(30);
  auto spec = PotentialSpec::anharmonic(BigReal(-0.5), BigReal(1) / 98, BigReal(49) / 8);
  auto s = fock_spectrum(build_fock(spec, 160), 1, SolverRoute::Auto, true);
  std::vector<BigReal> xs;
  for (int i = -100; i <= 100; ++i) xs.push_back(BigReal(i) / 10);
  auto psi = wavefunction(s.vectors[0], xs);
  std::size_t best = 0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (abs(psi[i]) > abs(psi[best])) best = i;
  EXPECT_TRUE(close_abs(abs(xs[best]), BigReal(7), BigReal(0.3)));
  EXPECT_TRUE(close_rel(abs(psi[200 - best]), abs(psi[best]), BigReal::pow10(-10)));
}

TEST(FockCutoffTest, DefaultRule) {
  PrecisionScope p(30);
  EXPECT_EQ(default_fock_cutoff(BigReal("0.01")), 160);
  EXPECT_EQ(default_fock_cutoff(BigReal("0.005")), 320);
  EXPECT_EQ(default_fock_cutoff(BigReal("0.04")), 40);
  EXPECT_EQ(default_fock_cutoff(BigReal("0.2")), 40);
  EXPECT_EQ(default_fock_cutoff(BigReal(0)), 40);
}

TEST(FockCutoffTest, RejectsCosine) {
  PrecisionScope p(30);
  EXPECT_THROW(build_fock(PotentialSpec::cosine(BigReal("0.1"), 2), 20), std::invalid_argument);
}
