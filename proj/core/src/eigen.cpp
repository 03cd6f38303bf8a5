#include "tunnelkit/eigen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tunnelkit {

namespace {

std::vector<BigReal> squared_offdiag(const SymTridiagonalMatrix& m) {
  std::vector<BigReal> e2(m.offdiag.size());
  for (std::size_t i = 0; i < e2.size(); ++i) mpfr_sqr(e2[i].raw(), m.offdiag[i].raw(), MPFR_RNDN);
  return e2;
}

std::size_t sturm_count_sq(const SymTridiagonalMatrix& m, const std::vector<BigReal>& e2,
                           mpfr_srcptr lambda, mpfr_ptr q, mpfr_ptr t) {
  const std::size_t n = m.size();
  std::size_t count = 0;
  mpfr_sub(q, m.diag[0].raw(), lambda, MPFR_RNDN);
  if (mpfr_sgn(q) < 0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (mpfr_zero_p(q)) {
      mpfr_set_zero(q, 1);
      mpfr_nextabove(q);
    }
    mpfr_div(t, e2[i - 1].raw(), q, MPFR_RNDN);
    mpfr_sub(q, m.diag[i].raw(), lambda, MPFR_RNDN);
    mpfr_sub(q, q, t, MPFR_RNDN);
    if (mpfr_sgn(q) < 0) ++count;
  }
  return count;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonalMatrix& m, const BigReal& lambda) {
  m.validate();
  auto e2 = squared_offdiag(m);
  BigReal q, t;
  return sturm_count_sq(m, e2, lambda.raw(), q.raw(), t.raw());
}

std::pair<BigReal, BigReal> gershgorin_bounds(const SymTridiagonalMatrix& m) {
  m.validate();
  const std::size_t n = m.size();
  BigReal lo, hi;
  for (std::size_t i = 0; i < n; ++i) {
    BigReal r;
    if (i > 0) r += abs(m.offdiag[i - 1]);
    if (i + 1 < n) r += abs(m.offdiag[i]);
    BigReal a = m.diag[i] - r;
    BigReal b = m.diag[i] + r;
    if (i == 0 || a < lo) lo = a;
    if (i == 0 || b > hi) hi = b;
  }
  return {lo, hi};
}

BigReal default_tolerance(const SymTridiagonalMatrix& m) {
  auto [lo, hi] = gershgorin_bounds(m);
  BigReal scale = max(BigReal(1), max(abs(lo), abs(hi)));
  return BigReal::pow10(6 - working_digits()) * scale;
}

std::vector<BigReal> eigenvalues_bisection(const SymTridiagonalMatrix& m, std::size_t i_lo,
                                           std::size_t i_hi, const BigReal& tol) {
  m.validate();
  const std::size_t n = m.size();
  if (i_lo > i_hi || i_hi >= n) throw std::invalid_argument("bisection index range out of bounds");
  if (!(tol > 0)) throw std::invalid_argument("bisection tolerance must be positive");
  if (tol < BigReal::pow10(5 - working_digits()))
    throw std::invalid_argument("bisection tolerance below reachable precision (" +
                                std::to_string(working_digits()) + " digits)");

  auto e2 = squared_offdiag(m);
  auto [lo, hi] = gershgorin_bounds(m);
  BigReal pad = (abs(lo) + abs(hi) + 1) * BigReal::pow10(-3);
  lo -= pad;
  hi += pad;

  BigReal q, t;
  auto count = [&](const BigReal& x) { return sturm_count_sq(m, e2, x.raw(), q.raw(), t.raw()); };

  std::vector<BigReal> out(i_hi - i_lo + 1);
  struct Interval {
    BigReal a, b;
    std::size_t na, nb;
  };
  std::vector<Interval> stack;
  stack.push_back({lo, hi, count(lo), count(hi)});
  BigReal mid, width;
  while (!stack.empty()) {
    Interval iv = std::move(stack.back());
    stack.pop_back();
    std::size_t first = std::max(iv.na, i_lo);
    std::size_t last = std::min(iv.nb, i_hi + 1);
    if (first >= last) continue;
    mpfr_add(mid.raw(), iv.a.raw(), iv.b.raw(), MPFR_RNDN);
    mpfr_div_2ui(mid.raw(), mid.raw(), 1, MPFR_RNDN);
    mpfr_sub(width.raw(), iv.b.raw(), iv.a.raw(), MPFR_RNDN);
    bool stalled = (mid == iv.a) || (mid == iv.b);
    if (width <= tol || stalled) {
      for (std::size_t k = first; k < last; ++k) out[k - i_lo] = mid;
      continue;
    }
    std::size_t nm = count(mid);
    // Right half pushed first so the left half is processed first.
    stack.push_back({mid, iv.b, nm, iv.nb});
    stack.push_back({iv.a, mid, iv.na, nm});
  }
  return out;
}

LanczosResult band_to_tridiagonal(const SymBandedMatrix& m, std::size_t num_lanczos,
                                  SeedRule seed) {
  const std::size_t n = m.size();
  if (num_lanczos == 0 || num_lanczos > n)
    throw std::invalid_argument("num_lanczos must be in [1, n]");

  std::vector<std::vector<BigReal>> basis;
  std::vector<BigReal> q(n);
  if (seed == SeedRule::UnitFirst) {
    q[0] = BigReal(1);
  } else {
    BigReal v = BigReal(1) / sqrt(BigReal(static_cast<long>(n)));
    for (auto& x : q) x = v;
  }

  BigReal breakdown_tol = BigReal::pow10(5 - working_digits()) * max(BigReal(1), m.norm_inf());
  std::vector<BigReal> alpha, beta;
  bool breakdown = false;
  BigReal dot, t;

  auto inner = [&](const std::vector<BigReal>& a, const std::vector<BigReal>& b) {
    mpfr_set_zero(dot.raw(), 1);
    for (std::size_t i = 0; i < n; ++i) {
      mpfr_mul(t.raw(), a[i].raw(), b[i].raw(), MPFR_RNDN);
      mpfr_add(dot.raw(), dot.raw(), t.raw(), MPFR_RNDN);
    }
    return dot;
  };
  auto axpy = [&](std::vector<BigReal>& y, const BigReal& a, const std::vector<BigReal>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      mpfr_mul(t.raw(), a.raw(), x[i].raw(), MPFR_RNDN);
      mpfr_sub(y[i].raw(), y[i].raw(), t.raw(), MPFR_RNDN);
    }
  };

  for (std::size_t j = 0; j < num_lanczos; ++j) {
    basis.push_back(q);
    std::vector<BigReal> w = m.multiply(q);
    BigReal a = inner(q, w);
    alpha.push_back(a);
    // Full reorthogonalization, two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) {
        BigReal c = inner(v, w);
        axpy(w, c, v);
      }
    }
    BigReal b = sqrt(inner(w, w));
    if (j + 1 == num_lanczos) break;
    if (b <= breakdown_tol) {
      breakdown = true;
      break;
    }
    beta.push_back(b);
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / b;
  }

  LanczosResult r;
  r.tridiagonal = SymTridiagonalMatrix(alpha, beta);
  r.breakdown = breakdown;
  r.seed = seed;
  r.steps = alpha.size();
  return r;
}

namespace {

// Lower band storage of width w: data[d*n + j] = A(j+d, j).
class BandWork {
 public:
  BandWork(const SymBandedMatrix& m, std::size_t width) : n_(m.size()), w_(width), data_((width + 1) * m.size()) {
    for (std::size_t d = 0; d <= m.halfband(); ++d)
      for (std::size_t j = 0; j + d < n_; ++j) data_[d * n_ + j] = m.band(d)[j];
  }
  mpfr_ptr at(std::size_t i, std::size_t j) {
    if (i < j) std::swap(i, j);
    std::size_t d = i - j;
    if (d > w_) return nullptr;
    return data_[d * n_ + j].raw();
  }
  std::size_t size() const { return n_; }
  std::size_t width() const { return w_; }

 private:
  std::size_t n_, w_;
  std::vector<BigReal> data_;
};

struct RotationScratch {
  BigReal x, y, r, c, s, t1, t2, t3, cc, ss, cs, app, aqq, apq;
};

// Rotation in plane (p, p+1) chosen to annihilate A(p+1, col) against A(p, col).
void annihilate(BandWork& A, std::size_t p, std::size_t col, RotationScratch& w) {
  const std::size_t q = p + 1;
  const std::size_t n = A.size();
  const std::size_t W = A.width();
  mpfr_ptr target = A.at(q, col);
  if (target == nullptr || mpfr_zero_p(target)) return;
  mpfr_ptr pivot = A.at(p, col);
  mpfr_hypot(w.r.raw(), pivot, target, MPFR_RNDN);
  mpfr_div(w.c.raw(), pivot, w.r.raw(), MPFR_RNDN);
  mpfr_div(w.s.raw(), target, w.r.raw(), MPFR_RNDN);

  std::size_t jlo = p >= W ? p - W : 0;
  std::size_t jhi = std::min(n - 1, q + W);
  for (std::size_t j = jlo; j <= jhi; ++j) {
    if (j == p || j == q) continue;
    mpfr_ptr ap = A.at(p, j);
    mpfr_ptr aq = A.at(q, j);
    bool xz = ap == nullptr || mpfr_zero_p(ap);
    bool yz = aq == nullptr || mpfr_zero_p(aq);
    if (xz && yz) continue;
    if (xz) mpfr_set_zero(w.x.raw(), 1); else mpfr_set(w.x.raw(), ap, MPFR_RNDN);
    if (yz) mpfr_set_zero(w.y.raw(), 1); else mpfr_set(w.y.raw(), aq, MPFR_RNDN);
    if (ap != nullptr) {
      mpfr_mul(w.t1.raw(), w.c.raw(), w.x.raw(), MPFR_RNDN);
      mpfr_mul(w.t2.raw(), w.s.raw(), w.y.raw(), MPFR_RNDN);
      mpfr_add(ap, w.t1.raw(), w.t2.raw(), MPFR_RNDN);
    }
    if (aq != nullptr) {
      mpfr_mul(w.t1.raw(), w.c.raw(), w.y.raw(), MPFR_RNDN);
      mpfr_mul(w.t2.raw(), w.s.raw(), w.x.raw(), MPFR_RNDN);
      mpfr_sub(aq, w.t1.raw(), w.t2.raw(), MPFR_RNDN);
    }
  }
  mpfr_set_zero(A.at(q, col), 1);

  mpfr_ptr pp = A.at(p, p);
  mpfr_ptr qq = A.at(q, q);
  mpfr_ptr pq = A.at(p, q);
  mpfr_set(w.app.raw(), pp, MPFR_RNDN);
  mpfr_set(w.aqq.raw(), qq, MPFR_RNDN);
  mpfr_set(w.apq.raw(), pq, MPFR_RNDN);
  mpfr_sqr(w.cc.raw(), w.c.raw(), MPFR_RNDN);
  mpfr_sqr(w.ss.raw(), w.s.raw(), MPFR_RNDN);
  mpfr_mul(w.cs.raw(), w.c.raw(), w.s.raw(), MPFR_RNDN);
  // 2cs*apq
  mpfr_mul(w.t3.raw(), w.cs.raw(), w.apq.raw(), MPFR_RNDN);
  mpfr_mul_2ui(w.t3.raw(), w.t3.raw(), 1, MPFR_RNDN);
  // app' = c^2 app + 2cs apq + s^2 aqq
  mpfr_mul(w.t1.raw(), w.cc.raw(), w.app.raw(), MPFR_RNDN);
  mpfr_mul(w.t2.raw(), w.ss.raw(), w.aqq.raw(), MPFR_RNDN);
  mpfr_add(pp, w.t1.raw(), w.t2.raw(), MPFR_RNDN);
  mpfr_add(pp, pp, w.t3.raw(), MPFR_RNDN);
  // aqq' = s^2 app - 2cs apq + c^2 aqq
  mpfr_mul(w.t1.raw(), w.ss.raw(), w.app.raw(), MPFR_RNDN);
  mpfr_mul(w.t2.raw(), w.cc.raw(), w.aqq.raw(), MPFR_RNDN);
  mpfr_add(qq, w.t1.raw(), w.t2.raw(), MPFR_RNDN);
  mpfr_sub(qq, qq, w.t3.raw(), MPFR_RNDN);
  // apq' = cs (aqq - app) + (c^2 - s^2) apq
  mpfr_sub(w.t1.raw(), w.aqq.raw(), w.app.raw(), MPFR_RNDN);
  mpfr_mul(w.t1.raw(), w.t1.raw(), w.cs.raw(), MPFR_RNDN);
  mpfr_sub(w.t2.raw(), w.cc.raw(), w.ss.raw(), MPFR_RNDN);
  mpfr_mul(w.t2.raw(), w.t2.raw(), w.apq.raw(), MPFR_RNDN);
  mpfr_add(pq, w.t1.raw(), w.t2.raw(), MPFR_RNDN);
}

}  // namespace

SymTridiagonalMatrix givens_tridiagonalize(const SymBandedMatrix& m) {
  const std::size_t n = m.size();
  const std::size_t b = m.halfband();
  if (b <= 1) return m.to_tridiagonal();

  BandWork A(m, b + 1);
  RotationScratch w;
  for (std::size_t k = b; k >= 2; --k) {
    for (std::size_t j = 0; j + k < n; ++j) {
      annihilate(A, j + k - 1, j, w);
      // Chase the bulge created at distance k+1 down the band.
      for (std::size_t r = j + k; r + k < n; r += k) {
        mpfr_ptr bulge = A.at(r + k, r - 1);
        if (bulge == nullptr || mpfr_zero_p(bulge)) break;
        annihilate(A, r + k - 1, r - 1, w);
      }
    }
  }

  SymTridiagonalMatrix t(n);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = BigReal(A.at(i, i));
  for (std::size_t i = 0; i + 1 < n; ++i) t.offdiag[i] = BigReal(A.at(i + 1, i));
  return t;
}

namespace {

Spectrum jacobi(DenseSymMatrix a, bool with_vectors) {
  const std::size_t n = a.size();
  DenseSymMatrix v;
  if (with_vectors) {
    v = DenseSymMatrix(n);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = BigReal(1);
  }

  BigReal frob;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a.at(i, j) * a.at(i, j);
  BigReal threshold = frob * BigReal::pow10(-2 * working_digits());

  BigReal theta, t, c, s, tau, g, h, tmp, off;
  for (int sweep = 0; sweep < 100; ++sweep) {
    mpfr_set_zero(off.raw(), 1);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        mpfr_sqr(tmp.raw(), a.at(p, q).raw(), MPFR_RNDN);
        mpfr_add(off.raw(), off.raw(), tmp.raw(), MPFR_RNDN);
      }
    if (off <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const BigReal& apq = a.at(p, q);
        if (apq.is_zero()) continue;
        // theta = (aqq - app) / (2 apq); t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
        theta = (a.at(q, q) - a.at(p, p)) / (apq * 2);
        t = BigReal(1) / (abs(theta) + sqrt(theta * theta + 1));
        if (theta.sign() < 0) t = -t;
        c = BigReal(1) / sqrt(t * t + 1);
        s = t * c;
        tau = s / (c + 1);
        BigReal shiftv = t * apq;
        a.at(p, p) -= shiftv;
        a.at(q, q) += shiftv;
        a.at(p, q) = BigReal();
        a.at(q, p) = BigReal();
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          g = a.at(r, p);
          h = a.at(r, q);
          a.at(r, p) = g - s * (h + g * tau);
          a.at(r, q) = h + s * (g - h * tau);
          a.at(p, r) = a.at(r, p);
          a.at(q, r) = a.at(r, q);
        }
        if (with_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            g = v.at(r, p);
            h = v.at(r, q);
            v.at(r, p) = g - s * (h + g * tau);
            v.at(r, q) = h + s * (g - h * tau);
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a.at(x, x) < a.at(y, y); });

  Spectrum out;
  out.digits = working_digits();
  out.method = "jacobi";
  for (std::size_t k : order) {
    out.values.push_back(a.at(k, k));
    if (with_vectors) {
      std::vector<BigReal> col(n);
      std::size_t imax = 0;
      for (std::size_t r = 0; r < n; ++r) {
        col[r] = v.at(r, k);
        if (abs(col[r]) > abs(col[imax])) imax = r;
      }
      if (col[imax].sign() < 0)
        for (auto& x : col) x = -x;
      out.vectors.push_back(std::move(col));
    }
  }
  return out;
}

void check_dense_limit(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw std::invalid_argument("dimension " + std::to_string(n) + " above dense limit " +
                                std::to_string(limit));
}

}  // namespace

Spectrum dense_eigen_small(const SymBandedMatrix& m, bool with_vectors, std::size_t dense_limit) {
  check_dense_limit(m.size(), dense_limit);
  return jacobi(DenseSymMatrix::from(m), with_vectors);
}

Spectrum dense_eigen_small(const SymTridiagonalMatrix& m, bool with_vectors,
                           std::size_t dense_limit) {
  check_dense_limit(m.size(), dense_limit);
  return jacobi(DenseSymMatrix::from(m), with_vectors);
}

std::vector<BigReal> lowest_eigenvalues(const SymBandedMatrix& m, std::size_t count,
                                        SolverRoute route) {
  if (count == 0) return {};
  if (count > m.size()) throw std::invalid_argument("more levels requested than matrix dimension");
  switch (route) {
    case SolverRoute::Dense: {
      auto s = dense_eigen_small(m, false);
      s.values.resize(count);
      return s.values;
    }
    case SolverRoute::Lanczos: {
      // e_0 never leaves the even subspace of a parity-symmetric matrix
      auto lr = band_to_tridiagonal(m, m.size(), SeedRule::AllOnes);
      const auto& t = lr.tridiagonal;
      if (t.size() < count) throw std::runtime_error("Krylov space exhausted before reaching the requested levels");
      return eigenvalues_bisection(t, 0, count - 1, default_tolerance(t));
    }
    case SolverRoute::Auto:
    case SolverRoute::Givens:
    default: {
      auto t = givens_tridiagonalize(m);
      return eigenvalues_bisection(t, 0, count - 1, default_tolerance(t));
    }
  }
}

}  // namespace tunnelkit
