#include "tunnelkit/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "tunnelkit/quadrature.hpp"

namespace tunnelkit {

namespace {

const double kLn10 = std::log(10.0);

BigReal rounded(const BigReal& x) { return BigReal(x.raw()); }

// Unscaled V(z) and V'(z).
class ShapeFunction {
 public:
  explicit ShapeFunction(const PotentialSpec& spec) {
    if (spec.family == Family::Cosine) {
      cosine_ = true;
      two_pi_ = BigReal::pi() * 2;
    } else {
      coeffs_ = polynomial_coefficients(spec);
    }
  }
  BigReal value(const BigReal& z) const {
    if (cosine_) return (BigReal(1) - cos(two_pi_ * z)) / (two_pi_ * two_pi_);
    BigReal acc;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
  }
  bool cosine() const { return cosine_; }
  const std::vector<BigReal>& coeffs() const { return coeffs_; }

 private:
  bool cosine_ = false;
  BigReal two_pi_;
  std::vector<BigReal> coeffs_;
};

// Gauss-Legendre over [a, b] cut into pieces no longer than `chunk`.
BigReal chunked_integral(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b,
                         int nodes, double chunk) {
  if (a == b) return BigReal(0);
  long pieces = std::max(1L, static_cast<long>(std::ceil(abs(b - a).to_double() / chunk)));
  BigReal width = (b - a) / BigReal(pieces);
  BigReal sum;
  for (long i = 0; i < pieces; ++i) {
    BigReal lo = a + width * BigReal(i);
    BigReal hi = i + 1 == pieces ? b : lo + width;
    sum += gauss_legendre(f, lo, hi, nodes);
  }
  return sum;
}

}  // namespace

BigReal action_S0(const PotentialSpec& spec) {
  if (spec.family == Family::DoubleWell) return BigReal(mpq_class(2, 3));
  if (spec.family == Family::Cosine) return BigReal(2) / (BigReal::pi() * BigReal::pi());
  auto pair = adjacent_minima(spec);
  ShapeFunction V(spec);
  auto f = [&](const BigReal& z) { return sqrt(max(V.value(z) * 2, BigReal(0))); };
  BigReal tol = BigReal::pow10(5 - working_digits());
  return integrate(f, pair.left.position, pair.right.position, tol, 16);
}

InstantonProfile instanton_profile(const PotentialSpec& spec, const BigReal& T, int grid_size) {
  if (T < 20) throw std::invalid_argument("instanton profile needs T >= 20");
  if (grid_size < 3) throw std::invalid_argument("grid needs at least 3 points");
  const int out_digits = working_digits();
  auto pair = adjacent_minima(spec);
  const double w0d = std::sqrt(pair.left.curvature.to_double());
  const double w1d = std::sqrt(pair.right.curvature.to_double());
  // the turning-point energy is ~ e^{-T w}; keep that many extra digits
  PrecisionScope scope(out_digits + static_cast<int>(std::ceil(T.to_double() * std::max(w0d, w1d) / kLn10)) + 10);

  ShapeFunction V(spec);
  const BigReal z0 = pair.left.position, z1 = pair.right.position;
  const BigReal w0 = sqrt(pair.left.curvature), w1 = sqrt(pair.right.curvature);
  const BigReal zm = (z0 + z1) / 2;
  const BigReal half_T = T / 2;
  // In the w variable below the integrand's nearest complex singularities
  // sit about pi/2 off the real axis, so Gauss-Legendre on short pieces
  // converges geometrically.
  const int gl_nodes = static_cast<int>(std::ceil(0.7 * (out_digits + 5))) + 8;

  // z = z0 + r0 sinh w near the start, z = z1 - r1 sinh w near the end;
  // dtau/dw is then close to 1/omega everywhere.
  struct Side {
    BigReal origin, r, sign, wmax;
  };
  auto make_side = [&](const BigReal& c, bool left) {
    Side s;
    s.origin = left ? z0 : z1;
    s.sign = left ? BigReal(1) : BigReal(-1);
    s.r = sqrt(c * 2) / (left ? w0 : w1);
    s.wmax = asinh(abs(zm - s.origin) / s.r);
    return s;
  };
  auto dtau_dw = [&](const Side& s, const BigReal& c, const BigReal& w) {
    BigReal z = s.origin + s.sign * s.r * sinh(w);
    return s.r * cosh(w) / sqrt(V.value(z) * 2 + c * 2);
  };
  auto side_time = [&](const Side& s, const BigReal& c, const BigReal& wa, const BigReal& wb) {
    return chunked_integral([&](const BigReal& w) { return dtau_dw(s, c, w); }, wa, wb, gl_nodes, 1.5);
  };
  auto transit = [&](const BigReal& log_c) {
    BigReal c = exp(log_c);
    Side L = make_side(c, true), R = make_side(c, false);
    return side_time(L, c, BigReal(0), L.wmax) + side_time(R, c, BigReal(0), R.wmax);
  };

  // Transit time falls monotonically with c. Bracket log c, then shrink the
  // bracket with the Illinois variant of regula falsi (keeps the bracket,
  // converges superlinearly where plain halving would need ~100 solves).
  BigReal guess(-2.0 * T.to_double() / (1.0 / w0d + 1.0 / w1d));
  BigReal lo = guess - 10, hi = guess + 10;
  BigReal f_lo = transit(lo) - T, f_hi = transit(hi) - T;
  for (int i = 0; i < 40 && !(f_lo > 0); ++i) {
    lo -= 10;
    f_lo = transit(lo) - T;
  }
  for (int i = 0; i < 40 && !(f_hi < 0); ++i) {
    hi += 10;
    f_hi = transit(hi) - T;
  }
  if (!(f_lo > 0) || !(f_hi < 0)) throw std::runtime_error("instanton: cannot bracket the transit energy");
  const BigReal width_tol = BigReal::pow10(-(out_digits + 2));
  BigReal root = (lo + hi) / 2;
  int side = 0;
  for (int it = 0; it < 400 && hi - lo > width_tol; ++it) {
    root = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    BigReal f_root = transit(root) - T;
    if (abs(f_root) < width_tol) break;
    if (f_root > 0) {
      lo = root;
      f_lo = f_root;
      if (side == -1) f_hi /= 2;
      side = -1;
    } else {
      hi = root;
      f_hi = f_root;
      if (side == 1) f_lo /= 2;
      side = 1;
    }
  }
  const BigReal c = exp(root);
  const Side L = make_side(c, true), R = make_side(c, false);
  const BigReal tau_mid = -half_T + side_time(L, c, BigReal(0), L.wmax);

  const std::size_t n = static_cast<std::size_t>(grid_size);
  std::vector<BigReal> tau(n), z(n), zdot(n);
  for (std::size_t i = 0; i < n; ++i)
    tau[i] = -half_T + T * BigReal(static_cast<unsigned long>(i)) / BigReal(static_cast<unsigned long>(n - 1));

  const BigReal newton_tol = BigReal::pow10(-(out_digits + 2));
  // Walks grid points on one side, Newton in w with incremental quadrature.
  auto walk = [&](const Side& s, const std::vector<std::size_t>& order, const BigReal& tau_origin, const BigReal& dir) {
    BigReal w_prev(0), t_prev = tau_origin;
    for (std::size_t i : order) {
      BigReal target = (tau[i] - tau_origin) * dir;  // elapsed time from the endpoint
      BigReal elapsed_prev = (t_prev - tau_origin) * dir;
      BigReal w = w_prev + (target - elapsed_prev) / dtau_dw(s, c, w_prev);
      for (int it = 0; it < 60; ++it) {
        BigReal elapsed = elapsed_prev + side_time(s, c, w_prev, w);
        BigReal dw = (target - elapsed) / dtau_dw(s, c, w);
        w += dw;
        if (abs(dw) < newton_tol) break;
        if (it == 59) throw std::runtime_error("instanton: grid inversion did not converge");
      }
      w_prev = w;
      t_prev = tau[i];
      z[i] = s.origin + s.sign * s.r * sinh(w);
    }
  };
  std::vector<std::size_t> left_order, right_order;
  for (std::size_t i = 0; i < n; ++i) (tau[i] <= tau_mid ? left_order : right_order).push_back(i);
  std::reverse(right_order.begin(), right_order.end());
  walk(L, left_order, -half_T, BigReal(1));
  walk(R, right_order, half_T, BigReal(-1));
  for (std::size_t i = 0; i < n; ++i) zdot[i] = sqrt(V.value(z[i]) * 2 + c * 2);

  InstantonProfile p;
  {
    PrecisionScope back(out_digits);
    p.T = rounded(T);
    p.scale = spec.g > 0 ? spec.scale() : BigReal(1);
    for (std::size_t i = 0; i < n; ++i) {
      p.tau.push_back(rounded(tau[i]));
      p.z.push_back(rounded(z[i]));
      p.zdot.push_back(rounded(zdot[i]));
    }
    p.z_start = rounded(z0);
    p.z_end = rounded(z1);
    p.omega_start = rounded(w0);
    p.omega_end = rounded(w1);
    p.energy = rounded(c);
  }
  auto A = asymptotic_A(p);
  p.A_plus = A.A_plus;
  p.A_minus = A.A_minus;
  return p;
}

AsymptoticA asymptotic_A(const InstantonProfile& p, AConvention convention) {
  const std::size_t n = p.tau.size();
  if (n < 3 || p.zdot.size() != n) throw std::invalid_argument("profile is empty");
  std::size_t jump = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (p.zdot[i] > p.zdot[jump]) jump = i;
  const BigReal t_lo = p.tau.front(), t_hi = p.tau.back(), t_j = p.tau[jump];
  const BigReal left_len = t_j - t_lo, right_len = t_hi - t_j;
  if (left_len < 5 / p.omega_start || right_len < 5 / p.omega_end)
    throw std::runtime_error("profile too short for a plateau fit");

  auto plateau = [&](const BigReal& a, const BigReal& b, const BigReal& rate, BigReal& spread) {
    BigReal sum, sum2;
    long count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (p.tau[i] < a || p.tau[i] > b) continue;
      BigReal v = p.zdot[i] * exp(rate * p.tau[i]);
      sum += v;
      sum2 += v * v;
      ++count;
    }
    if (count < 5) throw std::runtime_error("plateau window holds too few grid points");
    BigReal mean = sum / BigReal(count);
    BigReal var = max(sum2 / BigReal(count) - mean * mean, BigReal(0));
    spread = sqrt(var) / mean;
    return mean;
  };

  AsymptoticA r;
  // central 60% of each half
  r.A_minus = plateau(t_lo + left_len / 5, t_lo + left_len * 4 / 5, -p.omega_start, r.spread_minus);
  r.A_plus = plateau(t_j + right_len / 5, t_j + right_len * 4 / 5, p.omega_end, r.spread_plus);
  const BigReal limit = BigReal::pow10(-2);
  if (r.spread_minus > limit || r.spread_plus > limit) throw std::runtime_error("plateau not flat; profile too short");

  const BigReal total = p.omega_start + p.omega_end;
  BigReal e_minus = p.omega_end / total, e_plus = p.omega_start / total;
  if (convention == AConvention::Transposed) std::swap(e_minus, e_plus);
  r.A = pow(r.A_minus, e_minus) * pow(r.A_plus, e_plus);
  return r;
}

BigReal band_width(const BigReal& g) {
  if (!(g > 0)) throw std::invalid_argument("g must be positive");
  BigReal pi = BigReal::pi();
  return BigReal(8) / (pi * sqrt(pi) * sqrt(g)) * exp(-BigReal(2) / (pi * pi * g));
}

BigReal band_dispersion(const BigReal& g, const BigReal& theta) {
  return BigReal(mpq_class(1, 2)) - cos(theta) * band_width(g) / 2;
}

WkbPrediction predict(const PotentialSpec& spec, const PredictOptions& opts) {
  if (!(spec.g > 0)) throw std::invalid_argument("prediction needs g > 0");
  const BigReal half(mpq_class(1, 2));
  const BigReal pi = BigReal::pi();
  const BigReal quarter_root_pi = sqrt(sqrt(pi));  // pi^{1/4}
  const BigReal& g = spec.g;
  WkbPrediction w;
  w.omega = 1;
  switch (spec.family) {
    case Family::DoubleWell: {
      w.s = action_S0(spec);
      w.S0 = w.s / g;
      w.A = 2;
      w.prefactor = BigReal(4) / sqrt(g * pi);
      w.splitting = w.prefactor * exp(-w.S0);
      w.levels = {{half - w.splitting / 2, 1}, {half + w.splitting / 2, 1}};
      BigReal amp = BigReal(1) / sqrt(sqrt(pi * 4));  // (4 pi)^{-1/4}
      w.amplitudes["-a"] = {amp, -amp};
      w.amplitudes["a"] = {amp, amp};
      return w;
    }
    case Family::Cosine: {
      w.s = action_S0(spec);
      w.S0 = w.s / g;
      w.A = BigReal(2) / pi;
      const BigReal unit = BigReal(1) / (pi * sqrt(pi) * sqrt(g));  // pi^{-3/2} g^{-1/2}
      const BigReal e = exp(-w.S0);
      const BigReal base = BigReal(1) / quarter_root_pi;
      if (spec.boundary == Boundary::Periodic && spec.K == 2) {
        w.prefactor = unit * 8;
        w.splitting = w.prefactor * e;
        w.levels = {{half - w.splitting / 2, 1}, {half + w.splitting / 2, 1}};
        BigReal amp = base / sqrt(BigReal(2));
        w.amplitudes["0"] = {amp, amp};
        w.amplitudes["a"] = {amp, -amp};
        return w;
      }
      if (spec.boundary == Boundary::Periodic && spec.K == 3) {
        w.prefactor = unit * 6;
        w.splitting = w.prefactor * e;
        w.levels = {{half - unit * e * 4, 1}, {half + unit * e * 2, 2}};
        BigReal r3 = base / sqrt(BigReal(3)), r6 = base / sqrt(BigReal(6)), r2 = base / sqrt(BigReal(2));
        BigReal r23 = base * sqrt(BigReal(2) / 3);
        w.amplitudes["-a"] = {r3, -r6, -r2};
        w.amplitudes["0"] = {r3, r23, BigReal(0)};
        w.amplitudes["a"] = {r3, -r6, r2};
        return w;
      }
      if (spec.boundary == Boundary::InfiniteLine) {
        w.prefactor = unit * 8;
        w.splitting = w.prefactor * e;  // band width
        w.levels = {{half - w.splitting / 2, 1}, {half + w.splitting / 2, 1}};
        return w;
      }
      throw std::invalid_argument("prediction supports the cosine potential with K = 0, 2 or 3");
    }
    case Family::TripleWell: {
      w.s = action_S0(spec);
      w.S0 = w.s / g;
      w.omega = sqrt(BigReal(1) + spec.delta);
      auto profile = instanton_profile(spec, opts.profile_T, opts.profile_grid);
      w.A = asymptotic_A(profile, opts.convention).A;
      // 2^{3/4} sqrt(omega/pi) (1+omega)^{-1/4} A / sqrt(g)
      BigReal one_plus = BigReal(1) + w.omega;
      w.prefactor = pow(BigReal(2), BigReal(mpq_class(3, 4))) * sqrt(w.omega / pi) / sqrt(sqrt(one_plus)) * w.A / sqrt(g);
      w.splitting = w.prefactor * exp(-w.S0);
      w.levels = {{half - w.splitting, 1}, {half, 1}, {half + w.splitting, 1}};
      const BigReal base = BigReal(1) / quarter_root_pi;
      BigReal side = base / 2, mid = base / sqrt(BigReal(2));
      BigReal centre = sqrt(sqrt(w.omega * w.omega * 2 / one_plus)) * mid;
      w.amplitudes["-a"] = {side, mid, -side};
      w.amplitudes["0"] = {centre, BigReal(0), centre};
      w.amplitudes["a"] = {side, -mid, -side};
      return w;
    }
    default: break;
  }
  throw std::invalid_argument("no semiclassical prediction for " + to_string(spec.family));
}

namespace {

// Taylor-series integrator for z'' = V'(z) together with psi'' = V''(z) psi.
// Coefficients come from the usual power-series recurrences, so each step
// is accurate to the working precision for h well inside the radius of
// convergence.
class TaylorFlow {
 public:
  enum class Mode { Polynomial, Cosine, Free };

  TaylorFlow(Mode mode, std::vector<BigReal> coeffs, int order) : mode_(mode), order_(order) {
    if (mode_ == Mode::Polynomial) {
      // V' and V'' coefficients
      for (std::size_t k = 1; k < coeffs.size(); ++k) d1_.push_back(coeffs[k] * BigReal(static_cast<long>(k)));
      for (std::size_t k = 2; k < coeffs.size(); ++k)
        d2_.push_back(coeffs[k] * BigReal(static_cast<long>(k * (k - 1))));
      if (d1_.empty()) d1_.push_back(BigReal(0));
      if (d2_.empty()) d2_.push_back(BigReal(0));
    }
    two_pi_ = BigReal::pi() * 2;
  }

  // Advances (z, zd, psi, psid) by h.
  void step(BigReal& z, BigReal& zd, BigReal& psi, BigReal& psid, const BigReal& h) {
    const int N = order_;
    std::vector<BigReal> zc(N + 1), pc(N + 1), W(N + 1);
    zc[0] = z;
    zc[1] = zd;
    pc[0] = psi;
    pc[1] = psid;
    std::size_t deg = std::max(d1_.size(), d2_.size());
    std::vector<std::vector<BigReal>> pw;
    if (mode_ == Mode::Polynomial) pw.assign(deg, std::vector<BigReal>(N + 1));
    std::vector<BigReal> u(N + 1), sn(N + 1), cs(N + 1);
    BigReal acc, tmp;
    for (int k = 0; k + 2 <= N; ++k) {
      BigReal vp;
      switch (mode_) {
        case Mode::Polynomial: {
          pw[0][k] = k == 0 ? BigReal(1) : BigReal(0);
          if (deg > 1) pw[1][k] = zc[k];
          for (std::size_t j = 2; j < deg; ++j) {
            mpfr_set_zero(acc.raw(), 1);
            for (int i = 0; i <= k; ++i) {
              mpfr_mul(tmp.raw(), zc[i].raw(), pw[j - 1][k - i].raw(), MPFR_RNDN);
              mpfr_add(acc.raw(), acc.raw(), tmp.raw(), MPFR_RNDN);
            }
            pw[j][k] = acc;
          }
          vp = BigReal(0);
          for (std::size_t j = 0; j < d1_.size(); ++j) vp += d1_[j] * pw[j][k];
          W[k] = BigReal(0);
          for (std::size_t j = 0; j < d2_.size(); ++j) W[k] += d2_[j] * pw[j][k];
          break;
        }
        case Mode::Cosine: {
          u[k] = zc[k] * two_pi_;
          if (k == 0) {
            sn[0] = sin(u[0]);
            cs[0] = cos(u[0]);
          } else {
            BigReal s_acc, c_acc;
            for (int i = 1; i <= k; ++i) {
              BigReal iu = u[i] * BigReal(i);
              s_acc += iu * cs[k - i];
              c_acc += iu * sn[k - i];
            }
            sn[k] = s_acc / BigReal(k);
            cs[k] = -c_acc / BigReal(k);
          }
          vp = sn[k] / two_pi_;
          W[k] = cs[k];
          break;
        }
        case Mode::Free:
          vp = BigReal(0);
          W[k] = k == 0 ? BigReal(1) : BigReal(0);
          break;
      }
      const BigReal denom(static_cast<long>((k + 1) * (k + 2)));
      zc[k + 2] = vp / denom;
      mpfr_set_zero(acc.raw(), 1);
      for (int i = 0; i <= k; ++i) {
        mpfr_mul(tmp.raw(), W[i].raw(), pc[k - i].raw(), MPFR_RNDN);
        mpfr_add(acc.raw(), acc.raw(), tmp.raw(), MPFR_RNDN);
      }
      pc[k + 2] = acc / denom;
    }
    auto horner = [&](const std::vector<BigReal>& c, BigReal& value, BigReal& deriv) {
      value = c[N];
      deriv = c[N] * BigReal(N);
      for (int k = N - 1; k >= 0; --k) value = value * h + c[k];
      for (int k = N - 1; k >= 1; --k) deriv = deriv * h + c[k] * BigReal(k);
    };
    horner(zc, z, zd);
    horner(pc, psi, psid);
  }

 private:
  Mode mode_;
  int order_;
  std::vector<BigReal> d1_, d2_;
  BigReal two_pi_;
};

struct FlowSetup {
  int digits;
  int order;
  long steps_per_half;
};

FlowSetup flow_setup(const BigReal& T) {
  FlowSetup s;
  s.digits = std::max(working_digits(), static_cast<int>(std::ceil(1.5 * T.to_double() / kLn10)) + 20);
  s.order = static_cast<int>(std::ceil(1.15 * s.digits)) + 5;
  s.steps_per_half = std::max(1L, static_cast<long>(std::ceil(T.to_double() / 2 / 0.2)));
  return s;
}

}  // namespace

BigReal gelfand_yaglom_free(const BigReal& T) {
  if (!(T > 0)) throw std::invalid_argument("T must be positive");
  const int out = working_digits();
  FlowSetup fs = flow_setup(T);
  BigReal result;
  {
    PrecisionScope scope(fs.digits);
    TaylorFlow flow(TaylorFlow::Mode::Free, {}, fs.order);
    BigReal h = T / BigReal(2 * fs.steps_per_half);
    BigReal z, zd, psi, psid(1);
    for (long i = 0; i < 2 * fs.steps_per_half; ++i) flow.step(z, zd, psi, psid, h);
    result = psi;
  }
  PrecisionScope back(out);
  return rounded(result);
}

GelfandYaglomResult gelfand_yaglom_check(const PotentialSpec& spec, const BigReal& T) {
  if (spec.family != Family::DoubleWell && spec.family != Family::Cosine)
    throw std::invalid_argument("determinant check supports the double well and the cosine potential");
  if (T < 30) throw std::invalid_argument("T too small to separate the exponential regimes (need T >= 30)");
  if (!(spec.g > 0)) throw std::invalid_argument("g must be positive");
  const int out = working_digits();
  FlowSetup fs = flow_setup(T);
  GelfandYaglomResult r;
  BigReal psi_end, A_num;
  {
    PrecisionScope scope(fs.digits);
    auto pair = adjacent_minima(spec);
    ShapeFunction V(spec);
    TaylorFlow flow(V.cosine() ? TaylorFlow::Mode::Cosine : TaylorFlow::Mode::Polynomial,
                    V.cosine() ? std::vector<BigReal>{} : V.coeffs(), fs.order);
    const long n = fs.steps_per_half;
    const BigReal h = T / BigReal(2 * n);

    // infinite-time instanton through the midpoint at tau = 0
    BigReal zc = (pair.left.position + pair.right.position) / 2;
    BigReal z = zc, zd = sqrt(V.value(zc) * 2);
    BigReal dummy, dummy_d;
    for (long i = 0; i < n; ++i) flow.step(z, zd, dummy, dummy_d, -h);

    // forward with the fluctuation equation; collect the tail constants
    BigReal psi(0), psid(1);
    BigReal sum_minus, sum_plus;
    long cnt_minus = 0, cnt_plus = 0;
    const double Td = T.to_double();
    for (long i = 1; i <= 2 * n; ++i) {
      flow.step(z, zd, psi, psid, h);
      BigReal tau = -T / 2 + h * BigReal(i);
      double td = std::fabs(tau.to_double());
      // outer tail, where the approach to the minimum is exponential to e^{-T/4}
      if (td >= 0.25 * Td && td <= 0.45 * Td) {
        BigReal v = zd * exp(abs(tau));
        if (tau.sign() < 0) {
          sum_minus += v;
          ++cnt_minus;
        } else {
          sum_plus += v;
          ++cnt_plus;
        }
      }
    }
    if (cnt_minus == 0 || cnt_plus == 0) throw std::runtime_error("tail window is empty");
    psi_end = psi;
    A_num = sqrt(sum_minus / BigReal(cnt_minus) * (sum_plus / BigReal(cnt_plus)));
  }
  PrecisionScope back(out);
  r.T = T;
  r.digits_used = fs.digits;
  r.psi_end = rounded(psi_end);
  r.psi_free = gelfand_yaglom_free(T);
  r.A = rounded(A_num);
  const BigReal a = spec.scale();
  const BigReal S0 = action_S0(spec) * a * a;
  r.B = a * r.A / sqrt(S0);
  r.lambda0 = r.B * r.B * 4 * exp(-T);
  r.kappa_sqrt_lambda0 = sqrt(r.lambda0 * r.psi_free / r.psi_end);
  const BigReal A_exact = spec.family == Family::DoubleWell ? BigReal(2) : BigReal(2) / BigReal::pi();
  r.closed_form = sqrt(BigReal(2) / S0) * a * A_exact;
  return r;
}

}  // namespace tunnelkit
