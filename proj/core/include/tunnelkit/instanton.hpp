#pragma once

#include <map>
#include <string>
#include <vector>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/potentials.hpp"

namespace tunnelkit {

// Action s of one instanton between the adjacent minima per unit a^2; the
// full action is S0 = s a^2 = s / g. Exact for the double well (2/3) and the cosine (2/pi^2),
// quadrature otherwise.
BigReal action_S0(const PotentialSpec& spec);

// Classical path between adjacent minima on [-T/2, T/2] in unscaled
// coordinates z = x/a. Endpoints sit exactly on the minima; the conserved
// energy c (z'^2/2 - V(z) = c) is tuned so the transit takes time T.
struct InstantonProfile {
  BigReal T;
  BigReal scale;  // a; the scaled path is a z(tau)
  std::vector<BigReal> tau;
  std::vector<BigReal> z;
  std::vector<BigReal> zdot;
  BigReal z_start, z_end;
  BigReal omega_start, omega_end;
  BigReal energy;  // c
  BigReal A_plus, A_minus;  // filled by asymptotic_A
};

InstantonProfile instanton_profile(const PotentialSpec& spec, const BigReal& T, int grid_size);

// How the two plateau constants are combined when the curvatures differ.
//   Balanced:   A = A_minus^(w_end/(w_start+w_end)) * A_plus^(w_start/(w_start+w_end)),
//               invariant under shifting the time origin;
//   Transposed: exponents swapped.
// Both reduce to sqrt(A_plus A_minus) for equal curvatures.
enum class AConvention { Balanced, Transposed };

struct AsymptoticA {
  BigReal A_plus;   // end side:   z' ~ A_plus  e^{-w_end tau}
  BigReal A_minus;  // start side: z' ~ A_minus e^{ w_start tau}
  BigReal A;
  BigReal spread_plus, spread_minus;  // relative standard deviation on each plateau
};

AsymptoticA asymptotic_A(const InstantonProfile& profile, AConvention convention = AConvention::Balanced);

struct PredictedLevel {
  BigReal energy;
  int degeneracy = 1;
};

struct WkbPrediction {
  BigReal s;          // action per unit a^2
  BigReal S0;         // s / g
  BigReal A;
  BigReal omega;      // central frequency (triple well), 1 otherwise
  BigReal prefactor;  // splitting = prefactor * exp(-S0)
  BigReal splitting;
  std::vector<PredictedLevel> levels;
  // minimum label -> amplitude <q|E_j> for each eigenstate j (degenerate levels repeat)
  std::map<std::string, std::vector<BigReal>> amplitudes;
};

struct PredictOptions {
  AConvention convention = AConvention::Balanced;
  BigReal profile_T = 80;
  int profile_grid = 1601;
};

// Supported: DoubleWell, Cosine (K = 0, 2, 3), TripleWell.
WkbPrediction predict(const PotentialSpec& spec, const PredictOptions& opts = {});

// Lowest band of the cosine potential on the line: 1/2 - cos(theta) W/2 with
// W the band width.
BigReal band_dispersion(const BigReal& g, const BigReal& theta);
BigReal band_width(const BigReal& g);

struct GelfandYaglomResult {
  BigReal T;
  BigReal psi_end;    // psi(T/2) along the instanton
  BigReal psi_free;   // same for V'' = 1, i.e. sinh T
  BigReal B;          // zero-mode tail constant a A / sqrt(S0)
  BigReal A;          // plateau constant measured on the path
  BigReal lambda0;    // 4 B^2 e^{-T}
  BigReal kappa_sqrt_lambda0;
  BigReal closed_form;  // sqrt(2/S0) a A
  int digits_used = 0;
};

// Integrates psi'' = V''(z(tau)) psi, psi(-T/2)=0, psi'(-T/2)=1, along the
// infinite-time instanton centred at tau = 0 and forms the determinant
// ratio. DoubleWell and Cosine only; T >= 30.
GelfandYaglomResult gelfand_yaglom_check(const PotentialSpec& spec, const BigReal& T);

// psi(T/2) for V'' = 1 from the same integrator (exact: sinh T).
BigReal gelfand_yaglom_free(const BigReal& T);

}  // namespace tunnelkit
