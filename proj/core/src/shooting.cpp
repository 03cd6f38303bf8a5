#include "tunnelkit/shooting.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "tunnelkit/minimize.hpp"
#include "tunnelkit/parallel.hpp"

namespace tunnelkit {

BigReal default_step(const BigReal& E) { return BigReal(mpq_class(1, 100)) / (BigReal(1) + sqrt(abs(E))); }

ShootResult integrate(const PotentialSpec& spec, const BigReal& E, Parity parity, const ShootOptions& opts) {
  if (parity == Parity::None) throw std::invalid_argument("shooting needs a definite parity");
  if (!is_even(spec)) throw std::invalid_argument("shooting needs a symmetric potential");
  BigReal h = opts.h.is_zero() ? default_step(E) : opts.h;
  if (!(h > 0)) throw std::invalid_argument("step must be positive");

  const ScaledPotential vhat(spec);
  // Forbidden region only counts past the outermost well, so a barrier at
  // the origin (double and triple well) is crossed rather than stopped at.
  BigReal outer;
  if (spec.family != Family::Cosine)
    for (const auto& mn : minima(spec)) outer = max(outer, mn.position);
  const BigReal two_E = E * 2;
  auto weight = [&](const BigReal& x) { return vhat(x) * 2 - two_E; };  // f'' = w f

  ShootResult r;
  r.E = E;
  r.parity = parity;
  BigReal x;
  BigReal f = parity == Parity::Even ? BigReal(1) : BigReal(0);
  BigReal p = parity == Parity::Even ? BigReal(0) : BigReal(1);
  const BigReal half = h / 2;
  const BigReal sixth = h / 6;
  const BigReal blowup = BigReal::pow10(working_digits());

  BigReal w0 = weight(x);
  BigReal peak = abs(f) + abs(p);
  bool unstable_seen = false;
  bool have_m = false;
  if (opts.keep_trajectory) r.trajectory.push_back({x, f, p});

  for (long step = 0;; ++step) {
    if (step >= opts.max_steps) throw std::runtime_error("shooting: step limit reached before the stability bound");
    BigReal xm = x + half;
    BigReal x1 = x + h;
    BigReal wm = weight(xm);
    BigReal w1 = weight(x1);

    BigReal k1f = p;
    BigReal k1p = w0 * f;
    BigReal k2f = p + half * k1p;
    BigReal k2p = wm * (f + half * k1f);
    BigReal k3f = p + half * k2p;
    BigReal k3p = wm * (f + half * k2f);
    BigReal k4f = p + h * k3p;
    BigReal k4p = w1 * (f + h * k3f);
    f += sixth * (k1f + (k2f + k3f) * 2 + k4f);
    p += sixth * (k1p + (k2p + k3p) * 2 + k4p);
    x = std::move(x1);
    w0 = std::move(w1);

    BigReal size = abs(f) + abs(p);
    if (x <= outer) {
      peak = max(peak, size);
    } else if (!have_m || size < r.m_value) {
      r.m_value = size;
      have_m = true;
    }
    if (opts.keep_trajectory) r.trajectory.push_back({x, f, p});

    if (w0 > 0 && x > outer) {
      if (!unstable_seen) {
        unstable_seen = true;
        r.turning_point = x;
      }
      if ((f * p).sign() > 0) {
        r.K_bound = x;
        r.tail_sign = f.sign();
        if (outer > 0) r.m_value /= peak;
        return r;
      }
    }
    if (size > blowup) throw std::runtime_error("shooting: overflow before the stability bound");
  }
}

BigReal m_function(const PotentialSpec& spec, const BigReal& E, Parity parity, const BigReal& h) {
  ShootOptions o;
  o.h = h;
  return integrate(spec, E, parity, o).m_value;
}


std::vector<BigReal> find_levels(const PotentialSpec& spec, const std::pair<BigReal, BigReal>& window, Parity parity,
                                 const LevelSearchOptions& opts) {
  const auto& [lo, hi] = window;
  if (!(hi > lo)) throw std::invalid_argument("energy window must have hi > lo");
  if (opts.grid_points < 3) throw std::invalid_argument("need at least 3 grid points");
  BigReal tol = opts.tol.is_zero() ? BigReal::pow10(-12) : opts.tol;
  const std::size_t n = static_cast<std::size_t>(opts.grid_points);
  const BigReal spacing = (hi - lo) / BigReal(static_cast<long>(n - 1));
  auto energy = [&](std::size_t i) { return lo + spacing * BigReal(static_cast<unsigned long>(i)); };
  auto step_for = [&](const BigReal& E) { return opts.h.is_zero() ? default_step(E) : opts.h; };

  // A failed run (overflow) counts as "far from a level".
  auto safe_run = [&](const BigReal& E, const BigReal& h) -> std::optional<ShootResult> {
    ShootOptions o;
    o.h = h;
    try {
      return integrate(spec, E, parity, o);
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
  };
  auto safe_m = [&](const BigReal& E, const BigReal& h) -> std::optional<BigReal> {
    auto r = safe_run(E, h);
    if (!r) return std::nullopt;
    return r->m_value;
  };

  auto grid = parallel_map(n, opts.threads, [&](std::size_t i) {
    BigReal E = energy(i);
    return safe_run(E, step_for(E));
  });

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!grid[i] || !grid[i - 1] || !grid[i + 1]) continue;
    const BigReal& m = grid[i]->m_value;
    if (!(m < grid[i - 1]->m_value && m <= grid[i + 1]->m_value)) continue;
    if (grid[i - 1]->tail_sign == grid[i + 1]->tail_sign) continue;
    candidates.push_back(i);
  }

  auto refined = parallel_map(candidates.size(), opts.threads, [&](std::size_t j) {
    std::size_t i = candidates[j];
    BigReal h = step_for(energy(i));  // frozen across the bracket
    auto fn = [&](const BigReal& E) {
      auto m = safe_m(E, h);
      return m ? *m : BigReal::pow10(working_digits());
    };
    return golden_section(fn, energy(i - 1), energy(i + 1), tol).x;
  });
  std::sort(refined.begin(), refined.end());
  std::vector<BigReal> out;
  for (auto& e : refined)
    if (out.empty() || e - out.back() > tol * 2) out.push_back(std::move(e));
  return out;
}

}  // namespace tunnelkit
