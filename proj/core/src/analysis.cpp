#include "tunnelkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tunnelkit/fock.hpp"
#include "tunnelkit/minimize.hpp"
#include "tunnelkit/parallel.hpp"
#include "tunnelkit/planewave.hpp"
#include "tunnelkit/precision.hpp"

namespace tunnelkit {

namespace {

// Solves the small dense system a x = b by Gaussian elimination with
// partial pivoting. Throws if a pivot collapses relative to its column.
std::vector<BigReal> solve_dense(std::vector<std::vector<BigReal>> a, std::vector<BigReal> b) {
  const std::size_t n = b.size();
  std::vector<BigReal> scale(n);
  for (std::size_t i = 0; i < n; ++i) scale[i] = abs(a[i][i]);
  const BigReal tiny = BigReal::pow10(-working_digits() / 2);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (!(abs(a[piv][col]) > tiny * scale[col])) throw std::runtime_error("rank-deficient fit (collinear powers of g)");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      BigReal f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigReal> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigReal acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

struct LinearFit {
  std::vector<BigReal> beta;
  std::vector<BigReal> se;
  BigReal rss;
};

// Ordinary least squares y ~ X beta through the normal equations.
LinearFit least_squares(const std::vector<std::vector<BigReal>>& X, const std::vector<BigReal>& y) {
  const std::size_t n = y.size(), p = X.front().size();
  std::vector<std::vector<BigReal>> xtx(p, std::vector<BigReal>(p));
  std::vector<BigReal> xty(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      xty[j] += X[i][j] * y[i];
      for (std::size_t k = 0; k < p; ++k) xtx[j][k] += X[i][j] * X[i][k];
    }
  LinearFit f;
  f.beta = solve_dense(xtx, xty);
  for (std::size_t i = 0; i < n; ++i) {
    BigReal r = y[i];
    for (std::size_t j = 0; j < p; ++j) r -= X[i][j] * f.beta[j];
    f.rss += r * r;
  }
  BigReal sigma2 = n > p ? f.rss / BigReal(static_cast<unsigned long>(n - p)) : BigReal(0);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<BigReal> e(p);
    e[j] = 1;
    BigReal inv_jj = solve_dense(xtx, e)[j];
    f.se.push_back(sqrt(max(sigma2 * inv_jj, BigReal(0))));
  }
  return f;
}

}  // namespace

TripletLevels triple_well_levels(const BigReal& g, const BigReal& delta, int M) {
  auto build = build_triple_well(g, delta, M);
  auto even = block_lowest(build, Parity::Even, 2);
  auto odd = block_lowest(build, Parity::Odd, 1);
  std::vector<BigReal> all = {even[0], even[1], odd[0]};
  std::sort(all.begin(), all.end());
  return {all[0], all[1], all[2], M};
}

ComparisonPoint splitting_point(const PotentialSpec& spec, const ScanOptions& opts) {
  ComparisonPoint p;
  p.g = spec.g;
  try {
    p.digits_used = opts.digits ? *opts.digits : resolve_digits(std::nullopt, spec);
    PrecisionScope scope(p.digits_used);
    switch (spec.family) {
      case Family::DoubleWell: {
        p.M_used = opts.cutoff ? *opts.cutoff : default_fock_cutoff(spec.g);
        auto build = build_double_well(spec.g, p.M_used);
        p.dE_num = block_lowest(build, Parity::Odd, 1)[0] - block_lowest(build, Parity::Even, 1)[0];
        break;
      }
      case Family::Cosine: {
        if (spec.boundary != Boundary::Periodic || spec.K < 2)
          throw std::invalid_argument("splitting needs the cosine potential on a circle with K >= 2");
        p.M_used = opts.cutoff ? *opts.cutoff : default_plane_wave_cutoff(spec.g);
        auto e0 = sector_lowest(build_sector(spec.K, 0, spec.g, p.M_used), 1).values[0];
        auto e1 = sector_lowest(build_sector(spec.K, 1, spec.g, p.M_used), 1).values[0];
        p.dE_num = e1 - e0;
        break;
      }
      case Family::TripleWell: {
        p.M_used = opts.cutoff ? *opts.cutoff : default_fock_cutoff(spec.g);
        auto t = triple_well_levels(spec.g, spec.delta, p.M_used);
        p.dE_num = (t.E2 - t.E0) / 2;
        break;
      }
      default: throw std::invalid_argument("no splitting defined for " + to_string(spec.family));
    }
    p.dE_wkb = predict(spec, opts.predict).splitting;
    if (!(p.dE_num > 0) || !(p.dE_wkb > 0)) throw std::runtime_error("non-positive splitting");
    p.rel_diff = (p.dE_wkb - p.dE_num) / p.dE_wkb;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

std::vector<ComparisonPoint> splitting_scan(const PotentialSpec& base, const std::vector<BigReal>& g_grid,
                                            const ScanOptions& opts) {
  for (const auto& g : g_grid)
    if (!(g > 0)) throw std::invalid_argument("g grid must be positive");
  return parallel_map(g_grid.size(), opts.threads, [&](std::size_t i) {
    PotentialSpec s = base;
    s.g = g_grid[i];
    return splitting_point(s, opts);
  });
}

FitResult fit_corrections(const std::vector<std::pair<BigReal, BigReal>>& pts, int degree) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("fit degree must be 1..3");
  if (pts.size() < static_cast<std::size_t>(degree)) throw std::invalid_argument("need at least degree points");
  std::vector<std::vector<BigReal>> X;
  std::vector<BigReal> y;
  for (const auto& [g, rd] : pts) {
    std::vector<BigReal> row;
    BigReal gp = g;
    for (int j = 0; j < degree; ++j) {
      row.push_back(gp);
      gp *= g;
    }
    X.push_back(std::move(row));
    y.push_back(rd);
  }
  auto f = least_squares(X, y);
  FitResult r;
  r.coefficients = f.beta;
  r.std_errors = f.se;
  r.residual_norm = sqrt(f.rss);
  r.points = pts.size();
  return r;
}

FitResult fit_corrections(const std::vector<ComparisonPoint>& points, int degree) {
  std::vector<std::pair<BigReal, BigReal>> pts;
  for (const auto& p : points)
    if (p.ok()) pts.emplace_back(p.g, p.rel_diff);
  return fit_corrections(pts, degree);
}

ExpLawFit exp_law_fit(const std::vector<std::pair<BigReal, BigReal>>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("exponential fit needs at least 3 points");
  BigReal gmin = pts.front().first, gmax = pts.front().first;
  std::vector<std::vector<BigReal>> X;
  std::vector<BigReal> y;
  for (const auto& [g, dE] : pts) {
    if (!(g > 0)) throw std::invalid_argument("g must be positive");
    if (!(dE > 0)) throw std::invalid_argument("splitting must be positive");
    gmin = min(gmin, g);
    gmax = max(gmax, g);
    X.push_back({BigReal(1), BigReal(1) / g});
    y.push_back(log(dE * sqrt(g)));
  }
  if (gmax < gmin * 2) throw std::invalid_argument("g points must span a factor of at least 2");
  auto f = least_squares(X, y);
  ExpLawFit r;
  r.C = exp(f.beta[0]);
  r.s = -f.beta[1];
  r.residual_norm = sqrt(f.rss);
  return r;
}

DeltaCResult find_delta_c(const BigReal& g, const std::pair<BigReal, BigReal>& window, const BigReal& tol,
                          std::optional<int> M, std::optional<int> digits) {
  if (!(g > 0)) throw std::invalid_argument("g must be positive");
  if (!(window.second > window.first)) throw std::invalid_argument("delta window must have hi > lo");
  DeltaCResult r;
  r.g = g;
  r.digits_used = digits ? *digits : resolve_digits(std::nullopt, PotentialSpec::triple_well(g, BigReal(0)));
  PrecisionScope scope(r.digits_used);
  const int cutoff = M ? *M : default_fock_cutoff(g);
  BigReal width = tol;
  if (width.is_zero()) {
    // well below the expected side-centre splitting
    width = BigReal(1e-4) * exp(-BigReal(0.2) / g);
  }
  auto gap = [&](const BigReal& delta) {
    auto build = build_triple_well(g, delta, cutoff);
    auto even = block_lowest(build, Parity::Even, 2);
    return even[1] - even[0];
  };
  auto best = golden_section(gap, window.first, window.second, width);
  if (best.x - window.first < width * 2 || window.second - best.x < width * 2)
    throw std::runtime_error("no interior minimum of the level gap in the delta window");
  r.delta_c = best.x;
  r.iterations = best.iterations;
  r.levels = triple_well_levels(g, r.delta_c, cutoff);
  r.spacing_ratio = (r.levels.E2 - r.levels.E1) / (r.levels.E1 - r.levels.E0);
  return r;
}

}  // namespace tunnelkit
