#include "cli.hpp"

#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace tunnelkit::cli {

namespace {

const char* kFooter =
    "Precision: --digits, then the config file, then TUNNELKIT_DIGITS=N (N >= 20), then a policy\n"
    "from the expected splitting (never below 30). Output: CSV with one '# tunnelkit ...' line\n"
    "echoing the effective configuration, or JSON with the same columns (values as strings).\n"
    "Exit codes: 0 ok, 2 configuration error, 3 solver error.";

struct Raw {
  int M = 0, digits = 0, levels = 0;
};

struct Sub {
  CLI::App* app;
  std::function<int(const RunConfig&)> fn;
};

void add_potential(CLI::App* s, RunConfig& c) {
  s->add_option("--family", c.family, "anharmonic | double-well | cosine | triple-well")->capture_default_str();
  s->add_option("--g", c.g, "coupling (anharmonic: quartic coefficient, default 1)");
  s->add_option("--eps", c.eps, "anharmonic: harmonic coefficient")->capture_default_str();
  s->add_option("--c", c.c, "anharmonic: constant shift")->capture_default_str();
  s->add_option("--K", c.K, "cosine: number of minima on the circle")->capture_default_str();
  s->add_option("--delta", c.delta, "triple well: central curvature shift")->capture_default_str();
}

void add_output(CLI::App* s, RunConfig& c, Raw& r) {
  s->add_option("--M", r.M, "Fock or plane-wave cutoff (default: family policy)");
  s->add_option("--digits", r.digits, "working decimal digits (>= 20)");
  s->add_option("-o,--output", c.output, "output file; '-' or empty for stdout");
  s->add_option("--format", c.format, "csv | json")->capture_default_str();
  s->add_option("--threads", c.threads, "worker threads; never changes the output")->capture_default_str();
}

void add_wkb(CLI::App* s, RunConfig& c) {
  s->add_option("--convention", c.convention, "plateau weighting: balanced | transposed")->capture_default_str();
  s->add_option("--profile-T", c.profile_T, "transit time of the numeric instanton")->capture_default_str();
  s->add_option("--profile-grid", c.profile_grid, "points on the numeric instanton")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  Raw raw;
  CLI::App app{"tunnelkit: high-precision spectra and semiclassical tunnelling checks"};
  app.footer(kFooter);
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, Sub> subs;
  auto add = [&](const std::string& name, const std::string& desc, const std::string& schema,
                 std::function<int(const RunConfig&)> fn) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->footer("CSV columns: " + schema);
    add_potential(s, cfg);
    add_output(s, cfg, raw);
    subs[name] = {s, std::move(fn)};
    return s;
  };

  auto* spectrum = add("spectrum", "lowest levels by exact diagonalisation (Fock basis or plane-wave sectors)",
                       "level,sector,parity,energy,M,digits", cmd_spectrum);
  spectrum->add_option("--levels", raw.levels, "levels per sector");

  auto* shoot = add("shoot", "levels from the shooting method; optional m(E) scan dump",
                    "level,parity,energy,m_value,K_bound,turning_point,digits; scan: energy,parity,m_value",
                    cmd_shoot);
  shoot->add_option("--e-min", cfg.e_min, "lower end of the energy window");
  shoot->add_option("--e-max", cfg.e_max, "upper end of the energy window");
  shoot->add_option("--parity", cfg.parity, "even | odd | both")->capture_default_str();
  shoot->add_option("--grid-points", cfg.grid_points, "coarse energy grid size")->capture_default_str();
  shoot->add_option("--step", cfg.step, "RK4 step (0: energy dependent)")->capture_default_str();
  shoot->add_option("--tol", cfg.tol, "golden-section width (0: 1e-12)")->capture_default_str();
  shoot->add_option("--scan-output", cfg.scan_output, "file for the m(E) scan");

  auto* wkb = add("wkb", "semiclassical predictions", "level,energy,degeneracy,splitting,S0,A,prefactor,digits",
                  cmd_wkb);
  add_wkb(wkb, cfg);

  auto* splitting = add("splitting", "numeric vs semiclassical splitting over a g grid",
                        "g,dE_num,dE_wkb,rel_diff,M,digits,error", cmd_splitting);
  splitting->add_option("--g-grid", cfg.g_grid, "g values")->delimiter(',');
  add_wkb(splitting, cfg);

  auto* fit = add("fit", "fit rel_diff = alpha g + beta g^2 + gamma g^3, or dE = C g^-1/2 exp(-s/g)",
                  "name,value,std_error,points,digits", cmd_fit);
  fit->add_option("--g-grid", cfg.g_grid, "g values to scan")->delimiter(',');
  fit->add_option("--input", cfg.input, "splitting CSV to fit instead of scanning");
  fit->add_option("--degree", cfg.degree, "number of correction terms, 1..3")->capture_default_str();
  fit->add_option("--model", cfg.model, "corrections | exp")->capture_default_str();
  add_wkb(fit, cfg);

  add("band", "lowest band of the cosine potential, one point per sector (family defaults to cosine)", "k,theta,energy,wkb_energy,M,digits",
      cmd_band);

  auto* dc = add("delta-c", "central-curvature shift that equalises the triple-well spacings (family defaults to triple-well)",
                 "g,delta_c,E0,E1,E2,spacing_ratio,M,digits,error", cmd_delta_c);
  dc->add_option("--g-grid", cfg.g_grid, "g values")->delimiter(',');
  dc->add_option("--delta-lo", cfg.delta_lo, "search window start")->capture_default_str();
  dc->add_option("--delta-hi", cfg.delta_hi, "search window end")->capture_default_str();
  dc->add_option("--tol", cfg.tol, "search width (0: 1e-4 exp(-0.2/g))")->capture_default_str();

  auto* wf = add("wavefunction", "eigenfunctions on an x grid (oscillator units)", "level,energy,x,psi",
                 cmd_wavefunction);
  wf->add_option("--levels", raw.levels, "number of levels");
  wf->add_option("--x-min", cfg.x_min, "grid start")->capture_default_str();
  wf->add_option("--x-max", cfg.x_max, "grid end")->capture_default_str();
  wf->add_option("--x-points", cfg.x_points, "grid size")->capture_default_str();

  auto* gy = add("gy-check", "fluctuation determinant by Gelfand-Yaglom vs the closed form",
                 "g,T,kappa_sqrt_lambda0,closed_form,rel_diff,psi_end,psi_free,lambda0,digits", cmd_gy_check);
  gy->add_option("--T", cfg.T, "total Euclidean time")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const Sub* chosen = nullptr;
  for (auto& [name, sub] : subs)
    if (sub.app->parsed()) {
      cfg.command = name;
      chosen = &sub;
    }
  if (!chosen) return kExitConfig;
  auto given = [&](const char* opt) {
    const CLI::Option* o = chosen->app->get_option_no_throw(opt);
    return o != nullptr && o->count() > 0;
  };
  if (given("--M")) cfg.M = raw.M;
  if (given("--digits")) cfg.digits = raw.digits;
  if (given("--levels")) cfg.levels = raw.levels;
  // these two only make sense for one family
  if (!given("--family")) {
    if (cfg.command == "band") cfg.family = "cosine";
    if (cfg.command == "delta-c") cfg.family = "triple-well";
  }

  try {
    validate(cfg);
    return chosen->fn(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "tunnelkit " << cfg.command << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tunnelkit " << cfg.command << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "tunnelkit " << cfg.command << ": solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"tunnelkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace tunnelkit::cli
