#pragma once

#include <cstddef>
#include <vector>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/eigen.hpp"
#include "tunnelkit/matrix.hpp"
#include "tunnelkit/potentials.hpp"

namespace tunnelkit {

// Truncated Hamiltonian on the occupation-number states |0>..|M>.
struct FockMatrixBuild {
  PotentialSpec spec;
  int M = 0;
  SymBandedMatrix matrix;
};

// eps, g, c in Hamiltonian units: H = P^2/2 + eps X^2/2 + g X^4/4 + c.
FockMatrixBuild build_anharmonic(const BigReal& eps, const BigReal& g, const BigReal& c, int M);

// H = P^2/2 + V(sqrt(g) X)/g with V = (x^2 - 1)^2 / 8.
FockMatrixBuild build_double_well(const BigReal& g, int M);

// H = P^2/2 + V_delta(sqrt(g) X)/g.
FockMatrixBuild build_triple_well(const BigReal& g, const BigReal& delta, int M);

// Any polynomial family through the ladder tables.
FockMatrixBuild build_polynomial(const PotentialSpec& spec, int M);

// Dispatch on spec.family (Cosine is not supported here).
FockMatrixBuild build_fock(const PotentialSpec& spec, int M);

// ceil(1.6/g), never below 40.
int default_fock_cutoff(const BigReal& g);

// Even (n = 0, 2, ...) or odd (n = 1, 3, ...) principal block. Only valid
// for even potentials, where the blocks decouple exactly.
SymBandedMatrix parity_block(const FockMatrixBuild& build, Parity parity);

// Lowest `count` eigenvalues of one parity block.
std::vector<BigReal> block_lowest(const FockMatrixBuild& build, Parity parity, std::size_t count,
                                  SolverRoute route = SolverRoute::Auto);

// Lowest `levels` eigenvalues of the full matrix, merged from the parity
// blocks for even potentials. Eigenvectors come from the dense solver and
// are expressed in the full |0>..|M> basis.
Spectrum fock_spectrum(const FockMatrixBuild& build, std::size_t levels,
                       SolverRoute route = SolverRoute::Auto, bool with_vectors = false);

// psi(x) = sum_n c_n h_n(x), Hermite functions by the three-term recurrence.
std::vector<BigReal> wavefunction(const std::vector<BigReal>& coeffs,
                                  const std::vector<BigReal>& x_grid);

struct ConvergenceRow {
  int M = 0;
  std::vector<BigReal> energies;    // one per requested level
  std::vector<BigReal> rel_change;  // vs previous row; empty for the first row
  bool converged = false;           // all rel_change below threshold
};

struct ConvergenceTable {
  std::vector<std::size_t> levels;
  std::vector<ConvergenceRow> rows;
};

ConvergenceTable convergence_scan(const PotentialSpec& spec, const std::vector<int>& M_list,
                                  const std::vector<std::size_t>& level_indices,
                                  const BigReal& threshold, int threads = 1);

}  // namespace tunnelkit
