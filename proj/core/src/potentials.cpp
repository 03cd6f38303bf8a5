#include "tunnelkit/potentials.hpp"

#include <sstream>
#include <stdexcept>

namespace tunnelkit {

std::string to_string(Family f) {
  switch (f) {
    case Family::AnharmonicQuartic: return "anharmonic";
    case Family::DoubleWell: return "double-well";
    case Family::Cosine: return "cosine";
    case Family::TripleWell: return "triple-well";
    case Family::Polynomial: return "polynomial";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "anharmonic" || name == "quartic") return Family::AnharmonicQuartic;
  if (name == "double-well" || name == "double_well" || name == "doublewell") return Family::DoubleWell;
  if (name == "cosine" || name == "periodic") return Family::Cosine;
  if (name == "triple-well" || name == "triple_well" || name == "triplewell") return Family::TripleWell;
  if (name == "polynomial") return Family::Polynomial;
  throw std::invalid_argument("unknown potential family '" + name + "'");
}

PotentialSpec PotentialSpec::anharmonic(const BigReal& eps, const BigReal& g, const BigReal& c) {
  PotentialSpec s;
  s.family = Family::AnharmonicQuartic;
  s.eps = eps;
  s.g = g;
  s.c = c;
  return s;
}

PotentialSpec PotentialSpec::double_well(const BigReal& g) {
  PotentialSpec s;
  s.family = Family::DoubleWell;
  s.g = g;
  return s;
}

PotentialSpec PotentialSpec::cosine(const BigReal& g, int K) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  PotentialSpec s;
  s.family = Family::Cosine;
  s.g = g;
  s.K = K;
  s.boundary = K > 0 ? Boundary::Periodic : Boundary::InfiniteLine;
  return s;
}

PotentialSpec PotentialSpec::triple_well(const BigReal& g, const BigReal& delta) {
  PotentialSpec s;
  s.family = Family::TripleWell;
  s.g = g;
  s.delta = delta;
  return s;
}

PotentialSpec PotentialSpec::polynomial(std::vector<BigReal> coeffs, const BigReal& g) {
  PotentialSpec s;
  s.family = Family::Polynomial;
  s.coeffs = std::move(coeffs);
  s.g = g;
  return s;
}

BigReal PotentialSpec::scale() const {
  if (!(g > 0)) throw std::invalid_argument("scale needs g > 0");
  return BigReal(1) / sqrt(g);
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  os << to_string(family) << " g=" << g.str(12);
  switch (family) {
    case Family::AnharmonicQuartic: os << " eps=" << eps.str(12) << " c=" << c.str(12); break;
    case Family::Cosine: os << " K=" << K; break;
    case Family::TripleWell: os << " delta=" << delta.str(12); break;
    case Family::Polynomial: os << " degree=" << (coeffs.empty() ? 0 : coeffs.size() - 1); break;
    default: break;
  }
  return os.str();
}

std::vector<BigReal> triple_well_coefficients(const BigReal& delta) {
  const BigReal pi2 = BigReal::pi() * BigReal::pi();
  const BigReal u27 = BigReal(512) / (pi2 * 27);  // 512/(27 pi^2)
  const BigReal u9 = BigReal(512) / (pi2 * 9);    // 512/(9 pi^2)
  auto q = [](long p, long r) { return BigReal(mpq_class(p, r)); };
  std::vector<BigReal> c(11);
  c[2] = (BigReal(1) + delta) / 2;
  c[4] = q(-85, 24) + u27 - q(7, 2) * delta;
  c[6] = q(31, 4) - u9 + q(15, 2) * delta;
  c[8] = q(-55, 8) + u9 - q(13, 2) * delta;
  c[10] = q(13, 6) - u27 + BigReal(2) * delta;
  return c;
}

std::vector<BigReal> polynomial_coefficients(const PotentialSpec& spec) {
  switch (spec.family) {
    case Family::AnharmonicQuartic: {
      std::vector<BigReal> c(5);
      c[0] = spec.c;
      c[2] = spec.eps / 2;
      c[4] = spec.g / 4;
      return c;
    }
    case Family::DoubleWell: {
      // (x^2 - 1)^2 / 8
      std::vector<BigReal> c(5);
      c[0] = BigReal(mpq_class(1, 8));
      c[2] = BigReal(mpq_class(-1, 4));
      c[4] = BigReal(mpq_class(1, 8));
      return c;
    }
    case Family::TripleWell: return triple_well_coefficients(spec.delta);
    case Family::Polynomial: return spec.coeffs;
    case Family::Cosine: break;
  }
  throw std::invalid_argument("cosine potential has no polynomial form");
}

namespace {

BigReal poly_derivative_eval(const std::vector<BigReal>& c, const BigReal& x, int order) {
  BigReal acc;
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(order);) {
    long factor = 1;
    for (int i = 0; i < order; ++i) factor *= static_cast<long>(k) - i;
    acc = acc * x + c[k] * BigReal(factor);
  }
  return acc;
}

void check_order(int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be 0..3");
}

}  // namespace

BigReal eval(const PotentialSpec& spec, const BigReal& x, int order) {
  check_order(order);
  if (spec.family == Family::Cosine) {
    const BigReal two_pi = BigReal::pi() * 2;
    BigReal arg = two_pi * x;
    switch (order) {
      case 0: return (BigReal(1) - cos(arg)) / (two_pi * two_pi);
      case 1: return sin(arg) / two_pi;
      case 2: return cos(arg);
      default: return -two_pi * sin(arg);
    }
  }
  return poly_derivative_eval(polynomial_coefficients(spec), x, order);
}

BigReal scaled_eval(const PotentialSpec& spec, const BigReal& X, int order) {
  check_order(order);
  if (spec.family == Family::AnharmonicQuartic) return eval(spec, X, order);
  if (!(spec.g > 0)) throw std::invalid_argument("scaled potential needs g > 0");
  BigReal sg = sqrt(spec.g);
  // g^(k/2 - 1) V^(k)(sqrt(g) X)
  BigReal factor = pow(sg, static_cast<long>(order - 2));
  return factor * eval(spec, sg * X, order);
}

std::vector<Minimum> minima(const PotentialSpec& spec) {
  std::vector<Minimum> out;
  switch (spec.family) {
    case Family::AnharmonicQuartic: {
      if (spec.eps >= 0) {
        out.push_back({BigReal(0), spec.eps});
      } else {
        if (!(spec.g > 0)) throw std::invalid_argument("unbounded quartic potential");
        BigReal x = sqrt(-spec.eps / spec.g);
        out.push_back({-x, -spec.eps * 2});
        out.push_back({x, -spec.eps * 2});
      }
      return out;
    }
    case Family::DoubleWell: {
      BigReal a = spec.scale();
      out.push_back({-a, BigReal(1)});
      out.push_back({a, BigReal(1)});
      return out;
    }
    case Family::Cosine: {
      BigReal a = spec.scale();
      if (spec.boundary == Boundary::Periodic) {
        for (int k = 0; k < spec.K; ++k) out.push_back({a * BigReal(k), BigReal(1)});
      } else {
        out.push_back({-a, BigReal(1)});
        out.push_back({BigReal(0), BigReal(1)});
        out.push_back({a, BigReal(1)});
      }
      return out;
    }
    case Family::TripleWell: {
      BigReal a = spec.scale();
      out.push_back({-a, BigReal(1)});
      out.push_back({BigReal(0), BigReal(1) + spec.delta});
      out.push_back({a, BigReal(1)});
      return out;
    }
    case Family::Polynomial: {
      if (spec.minima_override.empty())
        throw std::invalid_argument("polynomial potential needs minima metadata");
      BigReal a = spec.scale();
      for (const auto& m : spec.minima_override) out.push_back({m.position * a, m.curvature});
      return out;
    }
  }
  return out;
}

AdjacentPair adjacent_minima(const PotentialSpec& spec) {
  switch (spec.family) {
    case Family::DoubleWell: return {{BigReal(-1), BigReal(1)}, {BigReal(1), BigReal(1)}};
    case Family::Cosine: return {{BigReal(0), BigReal(1)}, {BigReal(1), BigReal(1)}};
    case Family::TripleWell:
      return {{BigReal(0), BigReal(1) + spec.delta}, {BigReal(1), BigReal(1)}};
    case Family::Polynomial:
      if (spec.minima_override.size() >= 2) return {spec.minima_override[0], spec.minima_override[1]};
      throw std::invalid_argument("polynomial potential needs two minima for an instanton");
    default: break;
  }
  throw std::invalid_argument("family has no adjacent degenerate minima");
}

bool is_even(const PotentialSpec& spec) {
  if (spec.family != Family::Polynomial) return true;
  for (std::size_t k = 1; k < spec.coeffs.size(); k += 2)
    if (!spec.coeffs[k].is_zero()) return false;
  return true;
}

}  // namespace tunnelkit

namespace tunnelkit {

ScaledPotential::ScaledPotential(const PotentialSpec& spec) {
  if (spec.family == Family::Cosine) {
    cosine_ = true;
    BigReal sg = sqrt(spec.g);
    wave_ = BigReal::pi() * 2 * sg;
    amp_ = BigReal(1) / (BigReal::pi() * BigReal::pi() * spec.g * 4);
    return;
  }
  coeffs_ = polynomial_coefficients(spec);
  if (spec.family != Family::AnharmonicQuartic) {
    BigReal sg = sqrt(spec.g);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] *= pow(sg, static_cast<long>(k) - 2);
  }
  while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void ScaledPotential::eval_into(mpfr_ptr out, mpfr_srcptr X) const {
  if (cosine_) {
    mpfr_mul(out, wave_.raw(), X, MPFR_RNDN);
    mpfr_cos(out, out, MPFR_RNDN);
    mpfr_ui_sub(out, 1, out, MPFR_RNDN);
    mpfr_mul(out, out, amp_.raw(), MPFR_RNDN);
    return;
  }
  mpfr_set_zero(out, 1);
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    mpfr_mul(out, out, X, MPFR_RNDN);
    mpfr_add(out, out, coeffs_[k].raw(), MPFR_RNDN);
  }
}

BigReal ScaledPotential::operator()(const BigReal& X) const {
  BigReal r;
  eval_into(r.raw(), X.raw());
  return r;
}

}  // namespace tunnelkit
