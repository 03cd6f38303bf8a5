#pragma once

#include <functional>

#include "tunnelkit/bigreal.hpp"

namespace tunnelkit {

struct QuadratureResult {
  BigReal value;
  BigReal error_estimate;
  int levels = 0;
  bool converged = false;
};

// Double-exponential (tanh-sinh) rule on [a, b]. The integrand is never
// evaluated at the endpoints themselves.
QuadratureResult tanh_sinh(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                           const BigReal& b, const BigReal& tol, int max_levels = 14);

// Same, throwing std::runtime_error when tol is not met.
BigReal integrate(const std::function<BigReal(const BigReal&)>& f, const BigReal& a,
                  const BigReal& b, const BigReal& tol, int max_levels = 14);

}  // namespace tunnelkit

namespace tunnelkit {

// n-point Gauss-Legendre rule on [a, b]. Nodes are computed once per
// (n, precision) and cached per thread. For smooth integrands only.
BigReal gauss_legendre(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b, int n);

}  // namespace tunnelkit
