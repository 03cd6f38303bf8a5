#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/matrix.hpp"

namespace tunnelkit {

// Number of eigenvalues of m strictly below lambda.
std::size_t sturm_count(const SymTridiagonalMatrix& m, const BigReal& lambda);

// Closed interval containing the whole spectrum.
std::pair<BigReal, BigReal> gershgorin_bounds(const SymTridiagonalMatrix& m);

// A bisection tolerance that is safely reachable at the working precision.
BigReal default_tolerance(const SymTridiagonalMatrix& m);

// Eigenvalues with sorted indices i_lo..i_hi (inclusive), each bracketed to
// width <= tol. Throws std::invalid_argument if tol < 10^(5-digits).
std::vector<BigReal> eigenvalues_bisection(const SymTridiagonalMatrix& m, std::size_t i_lo,
                                           std::size_t i_hi, const BigReal& tol);

enum class SeedRule { UnitFirst, AllOnes };

struct LanczosResult {
  SymTridiagonalMatrix tridiagonal;
  bool breakdown = false;
  SeedRule seed = SeedRule::UnitFirst;
  std::size_t steps = 0;
};

// Lanczos with full reorthogonalization.
LanczosResult band_to_tridiagonal(const SymBandedMatrix& m, std::size_t num_lanczos,
                                  SeedRule seed = SeedRule::UnitFirst);

// Orthogonal reduction of a band matrix to tridiagonal form by Givens
// rotations with bulge chasing. Same spectrum as m up to rounding.
SymTridiagonalMatrix givens_tridiagonalize(const SymBandedMatrix& m);

inline constexpr std::size_t kDenseLimit = 600;

// Cyclic Jacobi. Eigenvalues ascending; vectors (if requested) orthonormal,
// largest component made positive.
Spectrum dense_eigen_small(const SymBandedMatrix& m, bool with_vectors,
                           std::size_t dense_limit = kDenseLimit);
Spectrum dense_eigen_small(const SymTridiagonalMatrix& m, bool with_vectors,
                           std::size_t dense_limit = kDenseLimit);

enum class SolverRoute { Auto, Givens, Dense, Lanczos };

// Lowest `count` eigenvalues. Auto uses the Givens reduction.
std::vector<BigReal> lowest_eigenvalues(const SymBandedMatrix& m, std::size_t count,
                                        SolverRoute route = SolverRoute::Auto);

}  // namespace tunnelkit
