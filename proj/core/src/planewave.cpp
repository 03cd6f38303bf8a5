#include "tunnelkit/planewave.hpp"

#include <stdexcept>

#include "tunnelkit/eigen.hpp"
#include "tunnelkit/parallel.hpp"

namespace tunnelkit {

BigReal momentum_squared(int K, int k, long n, const BigReal& g) {
  BigReal p = BigReal::pi() * 2 * BigReal(static_cast<long>(k) + n * K) / BigReal(K);
  return g * p * p;
}

int default_plane_wave_cutoff(const BigReal& g) {
  if (!(g > 0)) throw std::invalid_argument("plane-wave cutoff needs g > 0");
  // (1/2) g (2 pi c)^2 >= 50 / (4 pi^2 g)  <=>  c >= sqrt(50 / (8 pi^4)) / g
  BigReal pi2 = BigReal::pi() * BigReal::pi();
  BigReal c = sqrt(BigReal(50) / (pi2 * pi2 * 8)) / g * (BigReal(1) - BigReal::pow10(-15));
  long v = static_cast<long>(ceil(c).to_double());
  return static_cast<int>(std::max(4L, v));
}

SectorHamiltonian build_sector(int K, int k, const BigReal& g, int cutoff) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (k < 0 || k >= K) throw std::invalid_argument("sector index k must be in [0, K)");
  if (!(g > 0)) throw std::invalid_argument("g must be positive");
  if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
  SectorHamiltonian h;
  h.sector.k = k;
  h.K = K;
  h.g = g;
  h.cutoff = cutoff;
  const std::size_t dim = static_cast<std::size_t>(2 * cutoff + 1);
  h.matrix = SymTridiagonalMatrix(dim);
  BigReal pi2 = BigReal::pi() * BigReal::pi();
  BigReal pot_diag = BigReal(1) / (pi2 * g * 4);
  BigReal pot_off = -BigReal(1) / (pi2 * g * 8);
  for (long n = -cutoff; n <= cutoff; ++n) {
    std::size_t i = static_cast<std::size_t>(n + cutoff);
    h.matrix.diag[i] = momentum_squared(K, k, n, g) / 2 + pot_diag;
    if (i + 1 < dim) h.matrix.offdiag[i] = pot_off;
  }
  return h;
}

Spectrum sector_lowest(const SectorHamiltonian& h, std::size_t count, bool with_vectors) {
  if (count == 0 || count > h.matrix.size()) throw std::invalid_argument("bad level count");
  Spectrum s;
  if (with_vectors) {
    s = dense_eigen_small(h.matrix, true);
    s.values.resize(count);
    s.vectors.resize(count);
  } else {
    s.values = eigenvalues_bisection(h.matrix, 0, count - 1, default_tolerance(h.matrix));
    s.method = "bisection";
  }
  s.cutoff = h.cutoff;
  s.sector = std::to_string(h.sector.k);
  s.digits = working_digits();
  return s;
}

std::pair<SymTridiagonalMatrix, SymTridiagonalMatrix> parity_reduce(const SectorHamiltonian& h) {
  const int k = h.sector.k;
  const int c = h.cutoff;
  const auto& d = h.matrix.diag;
  const auto& e = h.matrix.offdiag;
  auto idx = [c](long n) { return static_cast<std::size_t>(n + c); };
  if (k == 0) {
    SymTridiagonalMatrix even(static_cast<std::size_t>(c) + 1), odd(static_cast<std::size_t>(c));
    for (long n = 0; n <= c; ++n) even.diag[n] = d[idx(n)];
    for (long n = 0; n < c; ++n) even.offdiag[n] = e[idx(n)];
    even.offdiag[0] = even.offdiag[0] * sqrt(BigReal(2));
    for (long n = 1; n <= c; ++n) odd.diag[n - 1] = d[idx(n)];
    for (long n = 1; n < c; ++n) odd.offdiag[n - 1] = e[idx(n)];
    return {even, odd};
  }
  if (2 * k == h.K) {
    // pairs (n, -1-n), n = 0..c-1; the unpaired edge state n = c is dropped
    SymTridiagonalMatrix even(static_cast<std::size_t>(c)), odd(static_cast<std::size_t>(c));
    for (long n = 0; n < c; ++n) {
      even.diag[n] = d[idx(n)];
      odd.diag[n] = d[idx(n)];
    }
    even.diag[0] += e[idx(-1)];
    odd.diag[0] -= e[idx(-1)];
    for (long n = 0; n + 1 < c; ++n) {
      even.offdiag[n] = e[idx(n)];
      odd.offdiag[n] = e[idx(n)];
    }
    return {even, odd};
  }
  throw std::invalid_argument("parity reduction needs sector 0 or K/2");
}

std::vector<BandPoint> band_profile(int K, const BigReal& g, int cutoff, int threads) {
  if (K < 2) throw std::invalid_argument("band profile needs K >= 2");
  std::size_t sectors = static_cast<std::size_t>(K / 2) + 1;
  auto energies = parallel_map(sectors, threads, [&](std::size_t k) {
    SectorHamiltonian h = build_sector(K, static_cast<int>(k), g, cutoff);
    return sector_lowest(h, 1).values.front();
  });
  std::vector<BandPoint> out;
  for (std::size_t k = 0; k < sectors; ++k) {
    BandPoint p;
    p.k = static_cast<int>(k);
    p.theta = BigReal::pi() * 2 * BigReal(static_cast<long>(k)) / BigReal(K);
    p.energy = energies[k];
    out.push_back(std::move(p));
  }
  return out;
}

ComplexGrid bloch_wavefunction(const SectorHamiltonian& h, const std::vector<BigReal>& eigvec,
                               const std::vector<BigReal>& x_grid) {
  if (eigvec.size() != h.matrix.size()) throw std::invalid_argument("eigenvector size mismatch");
  ComplexGrid out;
  const BigReal sg = sqrt(h.g);
  const BigReal norm = sqrt(sg) / sqrt(BigReal(h.K));
  const BigReal base = BigReal::pi() * 2 * sg / BigReal(h.K);
  for (const auto& x : x_grid) {
    BigReal re, im;
    for (long n = -h.cutoff; n <= h.cutoff; ++n) {
      const BigReal& cn = eigvec[static_cast<std::size_t>(n + h.cutoff)];
      if (cn.is_zero()) continue;
      BigReal phase = base * BigReal(static_cast<long>(h.sector.k) + n * h.K) * x;
      re += cn * cos(phase);
      im += cn * sin(phase);
    }
    out.re.push_back(re * norm);
    out.im.push_back(im * norm);
  }
  return out;
}

std::vector<BigReal> mirror_sector_vector(const std::vector<BigReal>& eigvec) {
  // Index i holds n = i - cutoff; the mirror state has c'_m = c_{-m-1}.
  const long dim = static_cast<long>(eigvec.size());
  const long c = (dim - 1) / 2;
  std::vector<BigReal> out(eigvec.size());
  for (long m = -c; m <= c; ++m) {
    long src = -m - 1;
    if (src < -c || src > c) continue;
    out[static_cast<std::size_t>(m + c)] = eigvec[static_cast<std::size_t>(src + c)];
  }
  return out;
}

std::pair<std::vector<BigReal>, std::vector<BigReal>> parity_recombine(const ComplexGrid& psi_k,
                                                                       const ComplexGrid& psi_mirror) {
  if (psi_k.re.size() != psi_mirror.re.size()) throw std::invalid_argument("grid size mismatch");
  const BigReal inv = BigReal(1) / sqrt(BigReal(2));
  std::vector<BigReal> even, odd;
  for (std::size_t i = 0; i < psi_k.re.size(); ++i) {
    even.push_back((psi_k.re[i] + psi_mirror.re[i]) * inv);
    odd.push_back((psi_k.im[i] - psi_mirror.im[i]) * inv);
  }
  return {even, odd};
}

}  // namespace tunnelkit
