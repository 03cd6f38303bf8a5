#include <algorithm>
#include <stdexcept>

#include "support.hpp"
#include "tunnelkit/eigen.hpp"
#include "tunnelkit/planewave.hpp"
#include "tunnelkit/potentials.hpp"

using namespace tunnelkit;
using tk_test::close_abs;
using tk_test::close_rel;

namespace {

// <n|V|m> over one full period by the trapezoid rule, exact for the
// trigonometric integrand once the node count beats the frequency.
BigReal potential_element(int K, int k, long n, long m, const BigReal& g) {
  const auto spec = PotentialSpec::cosine(g, K);
  const BigReal L = BigReal(static_cast<long>(K)) / sqrt(g);
  const long nodes = 64;
  const BigReal dp = BigReal::pi() * 2 * sqrt(g) * BigReal((m - n) * K) / BigReal(static_cast<long>(K));
  (void)k;  // the sector offset cancels in m - n
  BigReal acc;
  for (long j = 0; j < nodes; ++j) {
    BigReal x = L * BigReal(j) / BigReal(nodes);
    acc += scaled_eval(spec, x) * cos(dp * x);
  }
  return acc / BigReal(nodes);
}

std::vector<BigReal> residual(const SymTridiagonalMatrix& m, const std::vector<BigReal>& v, const BigReal& lambda) {
  std::vector<BigReal> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = (m.diag[i] - lambda) * v[i];
    if (i > 0) r[i] += m.offdiag[i - 1] * v[i - 1];
    if (i + 1 < v.size()) r[i] += m.offdiag[i] * v[i + 1];
  }
  return r;
}

}  // namespace

TEST(PlaneWaveTest, MomentumExample) {
  PrecisionScope p(30);
  const BigReal g("0.05");
  BigReal want = g * (BigReal::pi() * 2 / 3) * (BigReal::pi() * 2 / 3);
  EXPECT_TRUE(close_abs(momentum_squared(3, 1, 0, g), want, BigReal::pow10(-28)));
  // n = -1 in sector 1 of K = 3 has momentum -2/3 of the base
  EXPECT_TRUE(close_abs(momentum_squared(3, 1, -1, g), want * 4, BigReal::pow10(-27)));
}

TEST(PlaneWaveTest, MatrixMatchesPeriodicQuadrature) {
  PrecisionScope p(30);
  const BigReal g("0.05");
  for (auto [K, k] : {std::pair{3, 1}, std::pair{4, 0}, std::pair{4, 2}, std::pair{1, 0}}) {
    auto h = build_sector(K, k, g, 5);
    for (long n = -5; n <= 5; ++n) {
      std::size_t i = static_cast<std::size_t>(n + 5);
      BigReal diag = momentum_squared(K, k, n, g) / 2 + potential_element(K, k, n, n, g);
      EXPECT_TRUE(close_abs(h.matrix.diag[i], diag, BigReal::pow10(-26)));
      if (n < 5) EXPECT_TRUE(close_abs(h.matrix.offdiag[i], potential_element(K, k, n, n + 1, g), BigReal::pow10(-26)));
      // nothing beyond nearest neighbours
      if (n < 4) EXPECT_TRUE(close_abs(potential_element(K, k, n, n + 2, g), BigReal(0), BigReal::pow10(-26)));
    }
  }
}

TEST(PlaneWaveTest, MirrorSectorsShareSpectrum) {
  PrecisionScope p(30);
  const BigReal g("0.04");
  const int K = 5, c = 30;
  for (int k : {1, 2}) {
    auto a = dense_eigen_small(build_sector(K, k, g, c).matrix, false);
    auto b = dense_eigen_small(build_sector(K, K - k, g, c).matrix, false);
    // the truncation edge differs, so only the low end is compared
    for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(close_rel(a.values[i], b.values[i], BigReal::pow10(-20)));
  }
}

TEST(PlaneWaveTest, SameThetaAcrossRingSizes) {
  PrecisionScope p(30);
  const BigReal g("0.03");
  auto lowest = [&](int K, int k) { return sector_lowest(build_sector(K, k, g, 12 * K), 3).values; };
  auto a = lowest(2, 1), b = lowest(4, 2);
  auto c = lowest(3, 1), d = lowest(6, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(close_rel(a[i], b[i], BigReal::pow10(-20)));
    EXPECT_TRUE(close_rel(c[i], d[i], BigReal::pow10(-20)));
  }
}

TEST(PlaneWaveTest, ParityBlocksSplitTheSector) {
  PrecisionScope p(30);
  const BigReal g("0.05");
  for (auto [K, k] : {std::pair{4, 0}, std::pair{4, 2}, std::pair{3, 0}}) {
    auto h = build_sector(K, k, g, 20);
    auto full = dense_eigen_small(h.matrix, false).values;
    auto [ev, od] = parity_reduce(h);
    auto u = dense_eigen_small(ev, false).values;
    auto o = dense_eigen_small(od, false).values;
    u.insert(u.end(), o.begin(), o.end());
    std::sort(u.begin(), u.end());
    for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(close_rel(u[i], full[i], BigReal::pow10(-20))) << K << "," << k;
  }
  EXPECT_THROW(parity_reduce(build_sector(4, 1, g, 10)), std::invalid_argument);
}

TEST(PlaneWaveTest, ThreeWellRingDegeneracy) {
  PrecisionScope p(30);
  const BigReal g("0.05");
  auto band = band_profile(3, g, 30);
  ASSERT_EQ(band.size(), 2u);
  auto e2 = sector_lowest(build_sector(3, 2, g, 30), 1).values[0];
  EXPECT_TRUE(close_rel(band[1].energy, e2, BigReal::pow10(-18)));
  EXPECT_LT(band[0].energy, band[1].energy);
}

TEST(PlaneWaveTest, BandFollowsNearestNeighbourShape) {
  PrecisionScope p(30);
  const BigReal g("0.02");
  const int K = 24;
  auto band = band_profile(K, g, default_plane_wave_cutoff(g), 2);
  const BigReal lo = band.front().energy, hi = band.back().energy;
  ASSERT_GT(hi, lo);
  for (const auto& pt : band) {
    BigReal shape = (pt.energy - lo) / (hi - lo);
    BigReal want = (BigReal(1) - cos(pt.theta)) / 2;
    EXPECT_LT(abs(shape - want), BigReal(0.01)) << pt.k;
  }
  for (std::size_t i = 1; i < band.size(); ++i) EXPECT_GE(band[i].energy, band[i - 1].energy);
}

TEST(PlaneWaveTest, WeakCouplingGroundEnergy) {
  PrecisionScope p(30);
  const BigReal g("0.005");
  auto e = sector_lowest(build_sector(2, 0, g, default_plane_wave_cutoff(g)), 1).values[0];
  EXPECT_TRUE(close_abs(e, BigReal(0.5), BigReal(0.01)));
}

TEST(PlaneWaveTest, DefaultCutoffRule) {
  PrecisionScope p(30);
  const BigReal pi2 = BigReal::pi() * BigReal::pi();
  for (const char* gs : {"0.5", "0.05", "0.01", "0.002"}) {
    BigReal g(gs);
    int c = default_plane_wave_cutoff(g);
    auto edge = [&](int n) { return g * (BigReal::pi() * 2 * BigReal(static_cast<long>(n))) * (BigReal::pi() * 2 * BigReal(static_cast<long>(n))) / 2; };
    BigReal scale = BigReal(50) / (pi2 * g * 4);
    if (c > 4) {
      EXPECT_GE(edge(c), scale) << gs;
      EXPECT_LT(edge(c - 1), scale) << gs;
    } else {
      EXPECT_EQ(c, 4);
    }
  }
}

TEST(PlaneWaveTest, MirrorVectorIsAnEigenvector) {
  PrecisionScope p(30);
  const BigReal g("0.04");
  const int K = 5, c = 40;
  auto h = build_sector(K, 1, g, c);
  auto s = sector_lowest(h, 1, true);
  auto mirrored = mirror_sector_vector(s.vectors[0]);
  auto hm = build_sector(K, K - 1, g, c);
  auto r = residual(hm.matrix, mirrored, s.values[0]);
  for (const auto& x : r) EXPECT_LT(abs(x), BigReal::pow10(-20));
}

TEST(PlaneWaveTest, RecombinedStatesHaveParity) {
  PrecisionScope p(30);
  const BigReal g("0.04");
  const int K = 5, c = 40;
  auto h = build_sector(K, 2, g, c);
  auto s = sector_lowest(h, 1, true);
  auto hm = build_sector(K, K - 2, g, c);
  std::vector<BigReal> xs{BigReal(0.4), BigReal(1.7), BigReal(-0.4), BigReal(-1.7)};
  auto psi = bloch_wavefunction(h, s.vectors[0], xs);
  auto psim = bloch_wavefunction(hm, mirror_sector_vector(s.vectors[0]), xs);
  auto [even, odd] = parity_recombine(psi, psim);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(close_abs(even[i], even[i + 2], BigReal::pow10(-24)));
    EXPECT_TRUE(close_abs(odd[i], -odd[i + 2], BigReal::pow10(-24)));
  }
}

TEST(PlaneWaveTest, RejectsBadInput) {
  PrecisionScope p(30);
  EXPECT_THROW(build_sector(0, 0, BigReal(0.1), 5), std::invalid_argument);
  EXPECT_THROW(build_sector(3, 3, BigReal(0.1), 5), std::invalid_argument);
  EXPECT_THROW(build_sector(3, 0, BigReal(-0.1), 5), std::invalid_argument);
  EXPECT_THROW(build_sector(3, 0, BigReal(0.1), 1), std::invalid_argument);
  EXPECT_THROW(band_profile(1, BigReal(0.1), 5), std::invalid_argument);
  EXPECT_THROW(default_plane_wave_cutoff(BigReal(0)), std::invalid_argument);
}
