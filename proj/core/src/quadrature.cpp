#include "tunnelkit/quadrature.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace tunnelkit {

namespace {

// Sum of f at nodes t = offset + i*step for i >= 0 and the mirrored nodes,
// until the weights drop below the working precision.
BigReal level_sum(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                  const BigReal& b, const BigReal& half, const BigReal& tmax, const BigReal& h,
                  bool odd_only) {
  const BigReal half_pi = BigReal::pi() / 2;
  BigReal sum;
  long i = odd_only ? 1 : 0;
  long stride = odd_only ? 2 : 1;
  for (;; i += stride) {
    BigReal t = h * BigReal(i);
    if (t > tmax) break;
    BigReal sh = sinh(t);
    BigReal u = half_pi * sh;
    BigReal ch_u = cosh(u);
    BigReal w = half * half_pi * cosh(t) / (ch_u * ch_u);
    // distance from the nearer endpoint: half * (1 - tanh u) = 2 half / (1 + e^{2u})
    BigReal dist = half * 2 / (exp(u * 2) + 1);
    if (dist.is_zero() || w.is_zero()) break;
    if (i == 0) {
      sum += w * f(a + half);
    } else {
      // nodes that round onto an endpoint are dropped; a singular f there
      // would turn the sum into inf or nan
      BigReal hi = b - dist, lo = a + dist;
      if (hi == b && lo == a) break;
      if (hi != b) sum += w * f(hi);
      if (lo != a) sum += w * f(lo);
    }
  }
  return sum;
}

}  // namespace

QuadratureResult tanh_sinh(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                           const BigReal& b, const BigReal& tol, int max_levels) {
  QuadratureResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  if (b < a) {
    auto inner = tanh_sinh(f, b, a, tol, max_levels);
    inner.value = -inner.value;
    return inner;
  }
  BigReal half = (b - a) / 2;
  double dig = working_digits() * std::log(10.0) + 10.0;
  BigReal tmax(std::log(dig * 2.0 / M_PI) + 0.5);

  BigReal h(1);
  BigReal sum = level_sum(f, a, b, half, tmax, h, false);
  BigReal estimate = sum * h;
  for (int level = 1; level <= max_levels; ++level) {
    h /= 2;
    sum += level_sum(f, a, b, half, tmax, h, true);
    BigReal next = sum * h;
    BigReal diff = abs(next - estimate);
    estimate = next;
    r.levels = level;
    r.error_estimate = diff;
    if (level >= 3 && diff <= tol) {
      r.converged = true;
      break;
    }
  }
  r.value = estimate;
  return r;
}

BigReal integrate(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                  const BigReal& b, const BigReal& tol, int max_levels) {
  auto r = tanh_sinh(f, a, b, tol, max_levels);
  if (!r.converged)
    throw std::runtime_error("tanh-sinh quadrature did not converge (error estimate " +
                             r.error_estimate.str(6) + ")");
  return r.value;
}

}  // namespace tunnelkit

namespace tunnelkit {

namespace {

struct LegendreRule {
  int n = 0;
  mpfr_prec_t bits = 0;
  std::vector<BigReal> nodes;  // positive half, descending
  std::vector<BigReal> weights;
};

const LegendreRule& legendre_rule(int n) {
  thread_local std::deque<LegendreRule> cache;  // stable references
  const mpfr_prec_t bits = working_bits();
  for (const auto& r : cache)
    if (r.n == n && r.bits == bits) return r;
  LegendreRule rule;
  rule.n = n;
  rule.bits = bits;
  const BigReal pi = BigReal::pi();
  const BigReal eps = BigReal::pow10(-working_digits() + 2);
  for (int i = 1; i <= (n + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on P_n
    BigReal x = cos(pi * BigReal(4 * i - 1) / BigReal(4 * n + 2));
    BigReal dp;
    for (int it = 0; it < 100; ++it) {
      BigReal p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        BigReal p2 = (BigReal(2 * k - 1) * x * p1 - BigReal(k - 1) * p0) / BigReal(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = BigReal(n) * (x * p1 - p0) / (x * x - 1);
      BigReal dx = p1 / dp;
      x -= dx;
      if (abs(dx) < eps) {
        // one more pass so dp matches the final node
        p0 = 1;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          BigReal p2 = (BigReal(2 * k - 1) * x * p1 - BigReal(k - 1) * p0) / BigReal(k);
          p0 = std::move(p1);
          p1 = std::move(p2);
        }
        dp = BigReal(n) * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(BigReal(2) / ((BigReal(1) - x * x) * dp * dp));
  }
  cache.push_back(std::move(rule));
  return cache.back();
}

}  // namespace

BigReal gauss_legendre(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b, int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs n >= 1");
  const LegendreRule& rule = legendre_rule(n);
  const BigReal mid = (a + b) / 2, half = (b - a) / 2;
  BigReal sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const BigReal& x = rule.nodes[i];
    bool centre = (n % 2 == 1) && i + 1 == rule.nodes.size();
    if (centre) {
      sum += rule.weights[i] * f(mid);
    } else {
      BigReal d = half * x;
      sum += rule.weights[i] * (f(mid + d) + f(mid - d));
    }
  }
  return sum * half;
}

}  // namespace tunnelkit
