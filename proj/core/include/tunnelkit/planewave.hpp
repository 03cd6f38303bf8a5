#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/matrix.hpp"

namespace tunnelkit {

struct SectorId {
  int k = 0;
  Parity parity = Parity::None;
};

// Cosine potential on a circle with K minima, translation sector k.
// Basis: plane waves with momentum 2 pi sqrt(g) (k + nK)/K, n = -cutoff..cutoff.
struct SectorHamiltonian {
  SectorId sector;
  int K = 1;
  BigReal g;
  int cutoff = 0;
  SymTridiagonalMatrix matrix;
};

// <P^2> for plane wave n of sector k: g (2 pi (k + nK)/K)^2.
BigReal momentum_squared(int K, int k, long n, const BigReal& g);

// Smallest cutoff whose edge kinetic energy exceeds 50 times the potential
// scale 1/(4 pi^2 g); never below 4.
int default_plane_wave_cutoff(const BigReal& g);

SectorHamiltonian build_sector(int K, int k, const BigReal& g, int cutoff);

Spectrum sector_lowest(const SectorHamiltonian& h, std::size_t count, bool with_vectors = false);

// Cosine (first) and sine (second) blocks of sector 0 or K/2.
std::pair<SymTridiagonalMatrix, SymTridiagonalMatrix> parity_reduce(const SectorHamiltonian& h);

struct BandPoint {
  int k = 0;
  BigReal theta;   // folded to [0, pi]
  BigReal energy;  // lowest eigenvalue of sector k
};

// One point per sector k = 0..floor(K/2); sector K-k is its mirror.
std::vector<BandPoint> band_profile(int K, const BigReal& g, int cutoff, int threads = 1);

struct ComplexGrid {
  std::vector<BigReal> re;
  std::vector<BigReal> im;
};

// psi(x) = sum_n c_n exp(2 pi i (k + nK) sqrt(g) x / K) g^(1/4)/sqrt(K).
ComplexGrid bloch_wavefunction(const SectorHamiltonian& h, const std::vector<BigReal>& eigvec,
                               const std::vector<BigReal>& x_grid);

// Sector K-k coefficients describing the mirror image x -> -x of a
// sector-k state: c'_n = c_{-n-1} (n runs over -cutoff..cutoff).
std::vector<BigReal> mirror_sector_vector(const std::vector<BigReal>& eigvec);

// Real states of definite parity from a mirrored pair:
// even = (psi_k + psi_{K-k})/sqrt 2, odd = (psi_k - psi_{K-k})/(i sqrt 2).
std::pair<std::vector<BigReal>, std::vector<BigReal>> parity_recombine(const ComplexGrid& psi_k,
                                                                       const ComplexGrid& psi_mirror);

}  // namespace tunnelkit
