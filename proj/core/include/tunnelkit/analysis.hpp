#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/instanton.hpp"
#include "tunnelkit/potentials.hpp"

namespace tunnelkit {

struct ComparisonPoint {
  BigReal g;
  BigReal dE_num;
  BigReal dE_wkb;
  BigReal rel_diff;  // (dE_wkb - dE_num) / dE_wkb
  int M_used = 0;    // Fock cutoff or plane-wave cutoff
  int digits_used = 0;
  std::string error;  // non-empty when the point failed
  bool ok() const { return error.empty(); }
};

struct ScanOptions {
  int threads = 1;
  std::optional<int> digits;  // otherwise the precision policy
  std::optional<int> cutoff;  // otherwise the family default
  PredictOptions predict;
};

// Numeric splitting for one g:
//   DoubleWell:   E1 - E0 (lowest odd minus lowest even Fock level);
//   Cosine K>=2:  lowest level of sector 1 minus that of sector 0;
//   TripleWell:   (E2 - E0)/2, the mean spacing of the lowest triplet.
ComparisonPoint splitting_point(const PotentialSpec& spec, const ScanOptions& opts = {});

// One point per g (spec.g is replaced). Failed points carry an error string.
std::vector<ComparisonPoint> splitting_scan(const PotentialSpec& base, const std::vector<BigReal>& g_grid,
                                            const ScanOptions& opts = {});

struct FitResult {
  std::vector<BigReal> coefficients;  // alpha, beta, gamma (as many as the degree)
  std::vector<BigReal> std_errors;
  BigReal residual_norm;
  std::size_t points = 0;
};

// Least squares for rel_diff = alpha g + beta g^2 + gamma g^3 (first `degree` terms).
FitResult fit_corrections(const std::vector<std::pair<BigReal, BigReal>>& g_and_rel_diff, int degree);
FitResult fit_corrections(const std::vector<ComparisonPoint>& points, int degree);

struct ExpLawFit {
  BigReal C;
  BigReal s;
  BigReal residual_norm;  // in log(dE sqrt g)
};

// dE = C g^{-1/2} exp(-s/g), fitted as a line in 1/g.
ExpLawFit exp_law_fit(const std::vector<std::pair<BigReal, BigReal>>& g_and_splitting);

struct TripletLevels {
  BigReal E0, E1, E2;
  int M = 0;
};

// Three lowest triple-well levels at the working precision.
TripletLevels triple_well_levels(const BigReal& g, const BigReal& delta, int M);

struct DeltaCResult {
  BigReal g;
  BigReal delta_c;
  TripletLevels levels;
  BigReal spacing_ratio;  // (E2 - E1)/(E1 - E0)
  int iterations = 0;
  int digits_used = 0;
};

// Golden-section minimisation over delta of the gap between the two lowest
// even-parity levels, followed by one full solve at the optimum.
DeltaCResult find_delta_c(const BigReal& g, const std::pair<BigReal, BigReal>& window, const BigReal& tol = BigReal(0),
                          std::optional<int> M = std::nullopt, std::optional<int> digits = std::nullopt);

}  // namespace tunnelkit
