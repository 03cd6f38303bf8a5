#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/matrix.hpp"
#include "tunnelkit/potentials.hpp"

namespace tunnelkit {

struct TrajectoryPoint {
  BigReal x, f, df;
};

struct ShootResult {
  BigReal E;
  Parity parity = Parity::Even;
  // min over (0, K_bound] of |f| + |f'|. With wells away from the origin the
  // min runs over the tail past the outermost well only, divided by the
  // largest |f| + |f'| inside it.
  BigReal m_value;
  BigReal K_bound;  // first x in the unstable region with f f' > 0
  BigReal turning_point;
  int tail_sign = 0;  // sign of f at K_bound; flips across each eigenvalue
  std::vector<TrajectoryPoint> trajectory;  // filled only on request
};

struct ShootOptions {
  BigReal h;                     // step; zero means 0.01/(1 + sqrt|E|)
  bool keep_trajectory = false;
  long max_steps = 2000000;
};

// RK4 on f'' = 2 (Vhat(x) - E) f from x = 0 with f(0)=1, f'(0)=0 (even) or
// f(0)=0, f'(0)=1 (odd). Stops at K_bound. Throws std::runtime_error if
// |f| + |f'| exceeds 10^digits first.
ShootResult integrate(const PotentialSpec& spec, const BigReal& E, Parity parity,
                      const ShootOptions& opts = {});

BigReal m_function(const PotentialSpec& spec, const BigReal& E, Parity parity, const BigReal& h);

BigReal default_step(const BigReal& E);

struct LevelSearchOptions {
  BigReal h;          // zero means the energy-dependent default
  BigReal tol;        // golden-section bracket width
  int grid_points = 240;
  int threads = 1;
};

// Local minima of m(E) on a coarse grid over the window, each refined by
// golden-section search. A minimum is kept only if the tail sign differs
// between the ends of its bracket; minima produced by jumps of K_bound are
// dropped. Sorted ascending.
std::vector<BigReal> find_levels(const PotentialSpec& spec, const std::pair<BigReal, BigReal>& window,
                                 Parity parity, const LevelSearchOptions& opts);

}  // namespace tunnelkit
