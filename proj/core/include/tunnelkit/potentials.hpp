#pragma once

#include <string>
#include <vector>

#include "tunnelkit/bigreal.hpp"

namespace tunnelkit {

enum class Family { AnharmonicQuartic, DoubleWell, Cosine, TripleWell, Polynomial };
enum class Boundary { InfiniteLine, Periodic };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

struct Minimum {
  BigReal position;   // scaled coordinates
  BigReal curvature;  // V'' at the minimum, unscaled units
};

// A potential family with its parameters.
//
// AnharmonicQuartic is given directly in Hamiltonian units:
//   V(x) = eps x^2/2 + g x^4/4 + c,
// so eval and scaled_eval coincide for it. Every other family is given
// through its unscaled shape V and the coupling g, with scaled form
//   Vhat(X) = V(sqrt(g) X) / g.
struct PotentialSpec {
  Family family = Family::DoubleWell;
  BigReal eps;
  BigReal g;
  BigReal c;
  BigReal delta;
  int K = 0;  // number of minima on the circle; 0 means the infinite line
  Boundary boundary = Boundary::InfiniteLine;
  std::vector<BigReal> coeffs;           // Polynomial: V(x) = sum coeffs[k] x^k
  std::vector<Minimum> minima_override;  // Polynomial: unscaled minima, if known

  static PotentialSpec anharmonic(const BigReal& eps, const BigReal& g, const BigReal& c);
  static PotentialSpec double_well(const BigReal& g);
  static PotentialSpec cosine(const BigReal& g, int K);  // K = 0: infinite line
  static PotentialSpec triple_well(const BigReal& g, const BigReal& delta);
  static PotentialSpec polynomial(std::vector<BigReal> coeffs, const BigReal& g);

  // a = g^(-1/2)
  BigReal scale() const;
  std::string describe() const;
};

// Coefficients c[0..10] of the triple-well polynomial V_delta(x) = sum c[k] x^k.
std::vector<BigReal> triple_well_coefficients(const BigReal& delta);

// Polynomial coefficients of the unscaled V, for polynomial families.
// Throws for Cosine.
std::vector<BigReal> polynomial_coefficients(const PotentialSpec& spec);

// d^k/dx^k V(x), k in 0..3, unscaled.
BigReal eval(const PotentialSpec& spec, const BigReal& x, int derivative_order = 0);

// d^k/dX^k [V(sqrt(g) X)/g].
BigReal scaled_eval(const PotentialSpec& spec, const BigReal& X, int derivative_order = 0);

// Sorted minima in scaled coordinates with unscaled curvature.
std::vector<Minimum> minima(const PotentialSpec& spec);

// Unscaled positions of two adjacent minima used for instanton calculations
// (left < right), with their curvatures.
struct AdjacentPair {
  Minimum left;
  Minimum right;
};
AdjacentPair adjacent_minima(const PotentialSpec& spec);

bool is_even(const PotentialSpec& spec);

// Fast repeated evaluation of the scaled potential Vhat(X) (value only).
class ScaledPotential {
 public:
  explicit ScaledPotential(const PotentialSpec& spec);
  // out = Vhat(X); out must not alias X.
  void eval_into(mpfr_ptr out, mpfr_srcptr X) const;
  BigReal operator()(const BigReal& X) const;

 private:
  bool cosine_ = false;
  std::vector<BigReal> coeffs_;  // polynomial in X
  BigReal wave_;                 // cosine: 2 pi sqrt(g)
  BigReal amp_;                  // cosine: 1/(4 pi^2 g)
};

}  // namespace tunnelkit
