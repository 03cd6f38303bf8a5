#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tunnelkit::cli {

// Bad flags, bad values, missing inputs: exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numbers are kept as text until the working precision is known.
struct RunConfig {
  std::string command;

  std::string family = "anharmonic";
  std::string eps = "1";
  std::string g;  // empty: family default (1 for the anharmonic oscillator)
  std::string c = "0";
  std::string delta = "0";
  int K = 2;
  std::vector<std::string> g_grid;
  std::optional<int> M;
  std::optional<int> digits;

  std::string output;
  std::string format = "csv";
  int threads = 1;

  // spectrum, wavefunction, shoot
  std::optional<int> levels;
  std::string parity = "both";
  std::string e_min, e_max;
  int grid_points = 240;
  std::string step = "0";
  std::string tol = "0";
  std::string scan_output;

  // wkb, splitting
  std::string convention = "balanced";
  std::string profile_T = "80";
  int profile_grid = 1601;

  // fit
  int degree = 2;
  std::string model = "corrections";
  std::string input;

  // delta-c
  std::string delta_lo = "0", delta_hi = "0.3";

  // wavefunction
  std::string x_min = "-6", x_max = "6";
  int x_points = 121;

  // gy-check
  std::string T = "40";
};

// Throws ConfigError on anything inconsistent for cfg.command.
void validate(const RunConfig& cfg);

}  // namespace tunnelkit::cli
