#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tunnelkit/bigreal.hpp"

namespace tunnelkit {

struct SymTridiagonalMatrix {
  std::vector<BigReal> diag;
  std::vector<BigReal> offdiag;  // offdiag[i] couples i and i+1

  SymTridiagonalMatrix() = default;
  SymTridiagonalMatrix(std::vector<BigReal> d, std::vector<BigReal> e);
  explicit SymTridiagonalMatrix(std::size_t n);

  std::size_t size() const { return diag.size(); }
  // Throws unless offdiag has exactly size()-1 entries and size() >= 1.
  void validate() const;
};

// Symmetric band matrix stored as the main diagonal plus `halfband`
// super-diagonals. bands[d][i] holds A(i, i+d).
class SymBandedMatrix {
 public:
  SymBandedMatrix() = default;
  SymBandedMatrix(std::size_t n, std::size_t halfband);

  std::size_t size() const { return n_; }
  std::size_t halfband() const { return b_; }

  // Entries outside the band read as zero; writing there throws.
  BigReal get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const BigReal& v);
  BigReal& ref(std::size_t i, std::size_t j);

  const std::vector<BigReal>& band(std::size_t d) const { return bands_[d]; }

  // y = A x, left-to-right accumulation.
  std::vector<BigReal> multiply(const std::vector<BigReal>& x) const;
  // Largest absolute row sum.
  BigReal norm_inf() const;
  // Add c to every diagonal entry.
  void shift(const BigReal& c);
  // True if the matrix is tridiagonal (halfband <= 1).
  bool is_tridiagonal() const { return b_ <= 1; }
  SymTridiagonalMatrix to_tridiagonal() const;
  // Principal submatrix on rows/cols first, first+step, first+2*step, ...
  SymBandedMatrix strided_block(std::size_t first, std::size_t step) const;

 private:
  std::size_t n_ = 0;
  std::size_t b_ = 0;
  std::vector<std::vector<BigReal>> bands_;
};

// Dense symmetric storage used by the Jacobi solver.
class DenseSymMatrix {
 public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(std::size_t n);
  static DenseSymMatrix from(const SymBandedMatrix& m);
  static DenseSymMatrix from(const SymTridiagonalMatrix& m);

  std::size_t size() const { return n_; }
  BigReal& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const BigReal& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<BigReal> a_;
};

enum class Parity { None, Even, Odd };
std::string to_string(Parity p);

struct Spectrum {
  std::vector<BigReal> values;                // ascending
  std::vector<Parity> parities;               // same length as values, or empty
  std::vector<std::vector<BigReal>> vectors;  // optional; vectors[i] belongs to values[i]
  int cutoff = -1;                            // M (Fock) or plane-wave cutoff
  std::string sector;                         // "" or sector label
  int digits = 0;
  std::string method;

  std::size_t size() const { return values.size(); }
};

}  // namespace tunnelkit
