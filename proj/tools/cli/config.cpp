#include "config.hpp"

#include <algorithm>

namespace tunnelkit::cli {

namespace {

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
  return std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return v == a; });
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!one_of(cfg.format, {"csv", "json"})) throw ConfigError("--format must be csv or json");
  if (cfg.threads < 1) throw ConfigError("--threads must be >= 1");
  if (cfg.digits && *cfg.digits < 20) throw ConfigError("--digits must be >= 20");
  if (cfg.M && *cfg.M < 1) throw ConfigError("--M must be >= 1");
  for (const auto& g : cfg.g_grid)
    if (g.empty()) throw ConfigError("empty entry in --g-grid");
  if (cfg.K < 0) throw ConfigError("--K must be >= 0");

  const std::string& c = cfg.command;
  if (c == "spectrum" || c == "wavefunction") {
    if (!cfg.levels || *cfg.levels < 1) throw ConfigError("--levels must be >= 1");
    if (cfg.family == "cosine" && cfg.K < 1) throw ConfigError("spectrum on the line needs a circle: --K >= 1");
  }
  if (c == "wavefunction" && cfg.x_points < 2) throw ConfigError("--x-points must be >= 2");
  if (c == "shoot") {
    if (cfg.e_min.empty() || cfg.e_max.empty()) throw ConfigError("shoot needs --e-min and --e-max");
    if (!one_of(cfg.parity, {"even", "odd", "both"})) throw ConfigError("--parity must be even, odd or both");
    if (cfg.grid_points < 5) throw ConfigError("--grid-points must be >= 5");
  }
  if (c == "wkb" || c == "splitting" || c == "fit") {
    if (!one_of(cfg.convention, {"balanced", "transposed"}))
      throw ConfigError("--convention must be balanced or transposed");
    if (cfg.profile_grid < 3) throw ConfigError("--profile-grid must be >= 3");
  }
  if (c == "fit") {
    if (!one_of(cfg.model, {"corrections", "exp"})) throw ConfigError("--model must be corrections or exp");
    if (cfg.degree < 1 || cfg.degree > 3) throw ConfigError("--degree must be 1, 2 or 3");
  }
  if (c == "band" && cfg.K < 2) throw ConfigError("band needs --K >= 2");
}

}  // namespace tunnelkit::cli
