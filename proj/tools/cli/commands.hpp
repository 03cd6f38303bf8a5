#pragma once

#include "config.hpp"

namespace tunnelkit::cli {

int cmd_spectrum(const RunConfig& cfg);
int cmd_shoot(const RunConfig& cfg);
int cmd_wkb(const RunConfig& cfg);
int cmd_splitting(const RunConfig& cfg);
int cmd_fit(const RunConfig& cfg);
int cmd_band(const RunConfig& cfg);
int cmd_delta_c(const RunConfig& cfg);
int cmd_wavefunction(const RunConfig& cfg);
int cmd_gy_check(const RunConfig& cfg);

}  // namespace tunnelkit::cli
