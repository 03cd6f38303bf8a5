#include "tunnelkit/fock.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tunnelkit/ladder.hpp"
#include "tunnelkit/parallel.hpp"

namespace tunnelkit {

namespace {

// sqrt((n+1)(n+2)...(n+j)) at working precision
BigReal ladder_sqrt(long n, int j) {
  mpz_class prod = 1;
  for (int i = 1; i <= j; ++i) prod *= n + i;
  return sqrt(BigReal(prod));
}

void check_cutoff(int M, int minimum) {
  if (M < minimum) throw std::invalid_argument("Fock cutoff M must be >= " + std::to_string(minimum));
}

}  // namespace

FockMatrixBuild build_anharmonic(const BigReal& eps, const BigReal& g, const BigReal& c, int M) {
  check_cutoff(M, 4);
  FockMatrixBuild b;
  b.spec = PotentialSpec::anharmonic(eps, g, c);
  b.M = M;
  b.matrix = SymBandedMatrix(static_cast<std::size_t>(M) + 1, 4);
  const BigReal one_plus_eps = BigReal(1) + eps;
  const BigReal g16 = g / 16;
  for (long n = 0; n <= M; ++n) {
    mpq_class half_n = mpq_class(2 * n + 1, 2);
    mpq_class quad = 6 * n * n + 6 * n + 3;
    BigReal d = BigReal(half_n) * one_plus_eps / 2 + g16 * BigReal(quad) + c;
    b.matrix.set(n, n, d);
    if (n + 2 <= M) {
      BigReal v = (g * BigReal(mpq_class(2 * n + 3, 2)) - 1 + eps) / 4 * ladder_sqrt(n, 2);
      b.matrix.set(n, n + 2, v);
    }
    if (n + 4 <= M) b.matrix.set(n, n + 4, g16 * ladder_sqrt(n, 4));
  }
  return b;
}

FockMatrixBuild build_double_well(const BigReal& g, int M) {
  if (!(g > 0)) throw std::invalid_argument("double well needs g > 0");
  FockMatrixBuild b = build_anharmonic(BigReal(mpq_class(-1, 2)), g / 2, BigReal(1) / (g * 8), M);
  b.spec = PotentialSpec::double_well(g);
  return b;
}

FockMatrixBuild build_polynomial(const PotentialSpec& spec, int M) {
  if (spec.family == Family::Cosine) throw std::invalid_argument("cosine has no Fock build");
  if (spec.family == Family::AnharmonicQuartic) {
    auto b = build_anharmonic(spec.eps, spec.g, spec.c, M);
    return b;
  }
  if (!(spec.g > 0)) throw std::invalid_argument("Fock build needs g > 0");
  std::vector<BigReal> coeffs = polynomial_coefficients(spec);
  int degree = static_cast<int>(coeffs.size()) - 1;
  while (degree > 0 && coeffs[static_cast<std::size_t>(degree)].is_zero()) --degree;
  int halfband = std::max(degree, 2);
  check_cutoff(M, halfband);

  // Scaled coefficients: the x^k term of V(sqrt(g) X)/g is c_k g^(k/2-1) X^k.
  const BigReal sg = sqrt(spec.g);
  std::vector<BigReal> scaled(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) scaled[k] = coeffs[k] * pow(sg, static_cast<long>(k - 2));
  std::vector<LadderPolynomial> tables;
  for (int k = 1; k <= degree; ++k) tables.push_back(ladder_expand(k));
  const BigReal inv_sqrt2 = BigReal(1) / sqrt(BigReal(2));

  FockMatrixBuild b;
  b.spec = spec;
  b.M = M;
  b.matrix = SymBandedMatrix(static_cast<std::size_t>(M) + 1, static_cast<std::size_t>(halfband));
  for (long n = 0; n <= M; ++n) {
    for (int j = 0; j <= halfband && n + j <= M; ++j) {
      BigReal acc;
      // kinetic P^2/2: diagonal (n+1/2)/2, two-step -sqrt((n+1)(n+2))/4
      if (j == 0) acc += BigReal(mpq_class(2 * n + 1, 4));
      if (j == 2) acc -= BigReal(mpq_class(1, 4));
      if (j == 0) acc += scaled[0];
      for (int k = 1; k <= degree; ++k) {
        if (scaled[k].is_zero()) continue;
        const auto& t = tables[static_cast<std::size_t>(k - 1)];
        const RationalPoly& qp = t.q(j);
        if (qp.empty()) continue;
        mpq_class qv = eval_poly(qp, mpq_class(n));
        if (qv == 0) continue;
        BigReal term = scaled[k] * BigReal(qv);
        if (t.has_inverse_sqrt2) term *= inv_sqrt2;
        acc += term;
      }
      if (j > 0) acc *= ladder_sqrt(n, j);
      if (!acc.is_zero()) b.matrix.set(n, n + j, acc);
    }
  }
  return b;
}

FockMatrixBuild build_triple_well(const BigReal& g, const BigReal& delta, int M) {
  check_cutoff(M, 10);
  return build_polynomial(PotentialSpec::triple_well(g, delta), M);
}

FockMatrixBuild build_fock(const PotentialSpec& spec, int M) {
  switch (spec.family) {
    case Family::AnharmonicQuartic: return build_anharmonic(spec.eps, spec.g, spec.c, M);
    case Family::DoubleWell: return build_double_well(spec.g, M);
    case Family::TripleWell: return build_triple_well(spec.g, spec.delta, M);
    case Family::Polynomial: return build_polynomial(spec, M);
    case Family::Cosine: break;
  }
  throw std::invalid_argument("cosine potential uses the plane-wave basis");
}

int default_fock_cutoff(const BigReal& g) {
  if (!(g > 0)) return 40;
  // the relative slack absorbs g having been parsed at a lower precision
  BigReal m = ceil(BigReal(mpq_class(8, 5)) / g * (BigReal(1) - BigReal::pow10(-15)));
  long v = static_cast<long>(m.to_double());
  return static_cast<int>(std::max(40L, v));
}

SymBandedMatrix parity_block(const FockMatrixBuild& build, Parity parity) {
  if (!is_even(build.spec)) throw std::invalid_argument("parity blocks need an even potential");
  if (parity == Parity::None) return build.matrix;
  return build.matrix.strided_block(parity == Parity::Even ? 0 : 1, 2);
}

std::vector<BigReal> block_lowest(const FockMatrixBuild& build, Parity parity, std::size_t count,
                                  SolverRoute route) {
  SymBandedMatrix m = parity_block(build, parity);
  count = std::min(count, m.size());
  return lowest_eigenvalues(m, count, route);
}

Spectrum fock_spectrum(const FockMatrixBuild& build, std::size_t levels, SolverRoute route,
                       bool with_vectors) {
  Spectrum out;
  out.cutoff = build.M;
  out.digits = working_digits();
  if (levels == 0) return out;
  const std::size_t dim = build.matrix.size();
  if (levels > dim) throw std::invalid_argument("more levels requested than the cut Fock space holds");

  struct Level {
    BigReal value;
    Parity parity;
    std::vector<BigReal> vec;
  };
  std::vector<Level> all;

  auto collect = [&](Parity p) {
    SymBandedMatrix block = parity_block(build, p);
    std::size_t count = std::min(levels, block.size());
    std::size_t first = p == Parity::Odd ? 1 : 0;
    std::size_t step = p == Parity::None ? 1 : 2;
    if (with_vectors) {
      Spectrum s = dense_eigen_small(block, true);
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<BigReal> full(dim);
        for (std::size_t r = 0; r < s.vectors[i].size(); ++r) full[first + r * step] = s.vectors[i][r];
        all.push_back({s.values[i], p, std::move(full)});
      }
    } else {
      auto vals = lowest_eigenvalues(block, count, route);
      for (auto& v : vals) all.push_back({v, p, {}});
    }
  };

  if (is_even(build.spec)) {
    collect(Parity::Even);
    collect(Parity::Odd);
    out.method = with_vectors ? "jacobi/parity" : "parity";
  } else {
    collect(Parity::None);
    out.method = with_vectors ? "jacobi" : "full";
  }
  std::stable_sort(all.begin(), all.end(), [](const Level& a, const Level& b) { return a.value < b.value; });
  all.resize(std::min(levels, all.size()));
  for (auto& l : all) {
    out.values.push_back(l.value);
    out.parities.push_back(l.parity);
    if (with_vectors) out.vectors.push_back(std::move(l.vec));
  }
  return out;
}

std::vector<BigReal> wavefunction(const std::vector<BigReal>& coeffs,
                                  const std::vector<BigReal>& x_grid) {
  std::vector<BigReal> out;
  out.reserve(x_grid.size());
  const BigReal norm0 = BigReal(1) / sqrt(sqrt(BigReal::pi()));
  std::vector<BigReal> ratio_a(coeffs.size()), ratio_b(coeffs.size());
  for (std::size_t n = 1; n < coeffs.size(); ++n) {
    ratio_a[n] = sqrt(BigReal(2) / BigReal(static_cast<long>(n)));
    ratio_b[n] = sqrt(BigReal(static_cast<long>(n - 1)) / BigReal(static_cast<long>(n)));
  }
  for (const auto& x : x_grid) {
    BigReal h_prev;
    BigReal h = norm0 * exp(-(x * x) / 2);
    BigReal acc;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      if (n > 0) {
        // h_n = sqrt(2/n) x h_{n-1} - sqrt((n-1)/n) h_{n-2}
        BigReal next = ratio_a[n] * x * h - ratio_b[n] * h_prev;
        h_prev = std::move(h);
        h = std::move(next);
      }
      if (!coeffs[n].is_zero()) acc += coeffs[n] * h;
    }
    out.push_back(acc);
  }
  return out;
}

ConvergenceTable convergence_scan(const PotentialSpec& spec, const std::vector<int>& M_list,
                                  const std::vector<std::size_t>& level_indices,
                                  const BigReal& threshold, int threads) {
  if (!std::is_sorted(M_list.begin(), M_list.end()))
    throw std::invalid_argument("M_list must be ascending");
  if (level_indices.empty()) throw std::invalid_argument("no levels requested");
  std::size_t top = *std::max_element(level_indices.begin(), level_indices.end()) + 1;

  auto energies = parallel_map(M_list.size(), threads, [&](std::size_t i) {
    FockMatrixBuild b = build_fock(spec, M_list[i]);
    Spectrum s = fock_spectrum(b, std::min(top, b.matrix.size()));
    std::vector<BigReal> picked;
    for (std::size_t lvl : level_indices) {
      if (lvl >= s.values.size()) throw std::invalid_argument("level index beyond cut Fock space");
      picked.push_back(s.values[lvl]);
    }
    return picked;
  });

  ConvergenceTable table;
  table.levels = level_indices;
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    ConvergenceRow row;
    row.M = M_list[i];
    row.energies = energies[i];
    if (i > 0) {
      row.converged = true;
      for (std::size_t l = 0; l < level_indices.size(); ++l) {
        BigReal prev = energies[i - 1][l];
        BigReal denom = abs(prev).is_zero() ? BigReal(1) : abs(prev);
        BigReal rc = abs(energies[i][l] - prev) / denom;
        if (rc >= threshold) row.converged = false;
        row.rel_change.push_back(rc);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace tunnelkit
