#include "tunnelkit/matrix.hpp"

#include <stdexcept>

namespace tunnelkit {

SymTridiagonalMatrix::SymTridiagonalMatrix(std::vector<BigReal> d, std::vector<BigReal> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  validate();
}

SymTridiagonalMatrix::SymTridiagonalMatrix(std::size_t n) : diag(n), offdiag(n > 0 ? n - 1 : 0) {}

void SymTridiagonalMatrix::validate() const {
  if (diag.empty()) throw std::invalid_argument("tridiagonal matrix must have n >= 1");
  if (offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("tridiagonal off-diagonal length must be n-1");
}

SymBandedMatrix::SymBandedMatrix(std::size_t n, std::size_t halfband) : n_(n), b_(halfband) {
  if (n == 0) throw std::invalid_argument("banded matrix must have n >= 1");
  if (b_ >= n_) b_ = n_ - 1;
  bands_.resize(b_ + 1);
  for (std::size_t d = 0; d <= b_; ++d) bands_[d].resize(n_ - d);
}

BigReal SymBandedMatrix::get(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  std::size_t d = j - i;
  if (d > b_ || j >= n_) return BigReal();
  return bands_[d][i];
}

BigReal& SymBandedMatrix::ref(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  std::size_t d = j - i;
  if (d > b_ || j >= n_) throw std::out_of_range("entry outside band");
  return bands_[d][i];
}

void SymBandedMatrix::set(std::size_t i, std::size_t j, const BigReal& v) { ref(i, j) = v; }

std::vector<BigReal> SymBandedMatrix::multiply(const std::vector<BigReal>& x) const {
  if (x.size() != n_) throw std::invalid_argument("dimension mismatch");
  std::vector<BigReal> y(n_);
  BigReal t;
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t lo = i >= b_ ? i - b_ : 0;
    std::size_t hi = std::min(n_ - 1, i + b_);
    mpfr_set_zero(y[i].raw(), 1);
    for (std::size_t j = lo; j <= hi; ++j) {
      const BigReal& a = i <= j ? bands_[j - i][i] : bands_[i - j][j];
      mpfr_mul(t.raw(), a.raw(), x[j].raw(), MPFR_RNDN);
      mpfr_add(y[i].raw(), y[i].raw(), t.raw(), MPFR_RNDN);
    }
  }
  return y;
}

BigReal SymBandedMatrix::norm_inf() const {
  BigReal best;
  for (std::size_t i = 0; i < n_; ++i) {
    BigReal row;
    std::size_t lo = i >= b_ ? i - b_ : 0;
    std::size_t hi = std::min(n_ - 1, i + b_);
    for (std::size_t j = lo; j <= hi; ++j) {
      row += abs(i <= j ? bands_[j - i][i] : bands_[i - j][j]);
    }
    if (row > best) best = row;
  }
  return best;
}

void SymBandedMatrix::shift(const BigReal& c) {
  for (auto& v : bands_[0]) v += c;
}

SymTridiagonalMatrix SymBandedMatrix::to_tridiagonal() const {
  if (b_ > 1) throw std::logic_error("matrix is not tridiagonal");
  SymTridiagonalMatrix t(n_);
  t.diag = bands_[0];
  if (b_ == 1) t.offdiag = bands_[1];
  return t;
}

SymBandedMatrix SymBandedMatrix::strided_block(std::size_t first, std::size_t step) const {
  if (step == 0 || first >= n_) throw std::invalid_argument("bad block selection");
  std::size_t m = (n_ - first + step - 1) / step;
  std::size_t hb = b_ / step;
  SymBandedMatrix out(m, hb);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t d = 0; d <= out.halfband() && i + d < m; ++d)
      out.bands_[d][i] = get(first + i * step, first + (i + d) * step);
  return out;
}

DenseSymMatrix::DenseSymMatrix(std::size_t n) : n_(n), a_(n * n) {}

DenseSymMatrix DenseSymMatrix::from(const SymBandedMatrix& m) {
  DenseSymMatrix d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k <= m.halfband() && i + k < m.size(); ++k) {
      d.at(i, i + k) = m.band(k)[i];
      d.at(i + k, i) = m.band(k)[i];
    }
  return d;
}

DenseSymMatrix DenseSymMatrix::from(const SymTridiagonalMatrix& m) {
  m.validate();
  DenseSymMatrix d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) d.at(i, i) = m.diag[i];
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    d.at(i, i + 1) = m.offdiag[i];
    d.at(i + 1, i) = m.offdiag[i];
  }
  return d;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    default: return "none";
  }
}

}  // namespace tunnelkit
