#pragma once

#include <utility>

#include "tunnelkit/bigreal.hpp"

namespace tunnelkit {

struct GoldenResult {
  BigReal x;
  BigReal fx;
  int iterations = 0;
};

// Golden-section search for a minimum of fn on [a, b], down to bracket width tol.
template <class F>
GoldenResult golden_section(F&& fn, BigReal a, BigReal b, const BigReal& tol, int max_iter = 2000) {
  if (b < a) std::swap(a, b);
  const BigReal inv_phi = (sqrt(BigReal(5)) - 1) / 2;
  BigReal c = b - (b - a) * inv_phi;
  BigReal d = a + (b - a) * inv_phi;
  BigReal fc = fn(c), fd = fn(d);
  GoldenResult r;
  while (b - a > tol && r.iterations < max_iter) {
    ++r.iterations;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = fn(d);
    }
  }
  if (fc < fd) {
    r.x = c;
    r.fx = fc;
  } else {
    r.x = d;
    r.fx = fd;
  }
  return r;
}

}  // namespace tunnelkit
