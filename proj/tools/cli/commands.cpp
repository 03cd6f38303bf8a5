#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "table.hpp"
#include "tunnelkit/analysis.hpp"
#include "tunnelkit/fock.hpp"
#include "tunnelkit/instanton.hpp"
#include "tunnelkit/parallel.hpp"
#include "tunnelkit/planewave.hpp"
#include "tunnelkit/precision.hpp"
#include "tunnelkit/shooting.hpp"

namespace tunnelkit::cli {

namespace {

// g values are parsed once at this precision and then reused at whatever
// precision each point runs with.
constexpr int kParseDigits = 200;

BigReal num(const std::string& text, const std::string& what) {
  try {
    return BigReal(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad number for " + what + ": '" + text + "'");
  }
}

std::string g_text(const RunConfig& cfg) {
  if (!cfg.g.empty()) return cfg.g;
  if (cfg.family == "anharmonic" || cfg.family == "quartic") return "1";
  throw ConfigError("--g is required for family " + cfg.family);
}

std::vector<std::string> g_list(const RunConfig& cfg) {
  if (!cfg.g_grid.empty()) return cfg.g_grid;
  if (!cfg.g.empty()) return {cfg.g};
  throw ConfigError("give --g or --g-grid");
}

Family family_of(const RunConfig& cfg) {
  try {
    return family_from_string(cfg.family);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

PotentialSpec make_spec(const RunConfig& cfg, const std::string& g) {
  switch (family_of(cfg)) {
    case Family::AnharmonicQuartic:
      return PotentialSpec::anharmonic(num(cfg.eps, "--eps"), num(g, "--g"), num(cfg.c, "--c"));
    case Family::DoubleWell: return PotentialSpec::double_well(num(g, "--g"));
    case Family::Cosine: return PotentialSpec::cosine(num(g, "--g"), cfg.K);
    case Family::TripleWell: return PotentialSpec::triple_well(num(g, "--g"), num(cfg.delta, "--delta"));
    case Family::Polynomial: break;
  }
  throw ConfigError("family polynomial is library-only (needs coefficients and minima)");
}

int digits_for(const RunConfig& cfg, const PotentialSpec& spec) {
  try {
    return resolve_digits(cfg.digits, spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// Resolves the digits for one g without committing to a precision.
int digits_for(const RunConfig& cfg, const std::string& g) {
  PrecisionScope probe(kDefaultDigits);
  return digits_for(cfg, make_spec(cfg, g));
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

// Parameters that define the potential, in a fixed order.
Settings spec_settings(const RunConfig& cfg) {
  Settings s{{"family", cfg.family}};
  Family f = family_of(cfg);
  if (f == Family::AnharmonicQuartic) {
    s.emplace_back("eps", cfg.eps);
    s.emplace_back("c", cfg.c);
  }
  if (f == Family::Cosine) s.emplace_back("K", std::to_string(cfg.K));
  if (f == Family::TripleWell) s.emplace_back("delta", cfg.delta);
  return s;
}

std::string parity_name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    default: return "none";
  }
}

PredictOptions predict_options(const RunConfig& cfg) {
  PredictOptions po;
  po.convention = cfg.convention == "transposed" ? AConvention::Transposed : AConvention::Balanced;
  po.profile_T = num(cfg.profile_T, "--profile-T");
  po.profile_grid = cfg.profile_grid;
  return po;
}

std::vector<BigReal> parse_grid(const std::vector<std::string>& texts) {
  std::vector<BigReal> out;
  for (const auto& t : texts) {
    BigReal g = num(t, "--g-grid");
    if (!(g > 0)) throw ConfigError("g values must be positive: " + t);
    out.push_back(std::move(g));
  }
  return out;
}

int workers(const RunConfig& cfg) { return std::max(1, cfg.threads); }

}  // namespace

int cmd_spectrum(const RunConfig& cfg) {
  const std::string gt = g_text(cfg);
  const int d = digits_for(cfg, gt);
  PrecisionScope scope(d);
  const PotentialSpec spec = make_spec(cfg, gt);
  const auto n = static_cast<std::size_t>(*cfg.levels);
  Settings s = spec_settings(cfg);
  s.emplace_back("g", gt);
  s.emplace_back("levels", std::to_string(n));
  const std::vector<std::string> cols{"level", "sector", "parity", "energy", "M", "digits"};

  if (spec.family == Family::Cosine) {
    const int cutoff = cfg.M ? *cfg.M : default_plane_wave_cutoff(spec.g);
    s.emplace_back("M", std::to_string(cutoff));
    s.emplace_back("digits", std::to_string(d));
    TableWriter w("spectrum", cfg.output, cfg.format, s, cols);
    auto per_sector = parallel_map(static_cast<std::size_t>(spec.K), workers(cfg), [&](std::size_t k) {
      return sector_lowest(build_sector(spec.K, static_cast<int>(k), spec.g, cutoff), n).values;
    });
    for (std::size_t k = 0; k < per_sector.size(); ++k)
      for (std::size_t i = 0; i < per_sector[k].size(); ++i)
        w.add_row({std::to_string(i), std::to_string(k), "none", per_sector[k][i].str(d), std::to_string(cutoff),
                   std::to_string(d)});
    w.commit();
    return 0;
  }

  const int M = cfg.M ? *cfg.M : default_fock_cutoff(spec.g);
  s.emplace_back("M", std::to_string(M));
  s.emplace_back("digits", std::to_string(d));
  auto sp = fock_spectrum(build_fock(spec, M), n);
  TableWriter w("spectrum", cfg.output, cfg.format, s, cols);
  for (std::size_t i = 0; i < sp.values.size(); ++i) {
    Parity p = i < sp.parities.size() ? sp.parities[i] : Parity::None;
    w.add_row({std::to_string(i), "0", parity_name(p), sp.values[i].str(d), std::to_string(M), std::to_string(d)});
  }
  w.commit();
  return 0;
}

int cmd_shoot(const RunConfig& cfg) {
  const std::string gt = g_text(cfg);
  const int d = digits_for(cfg, gt);
  PrecisionScope scope(d);
  const PotentialSpec spec = make_spec(cfg, gt);
  if (spec.family == Family::Cosine) throw ConfigError("shooting needs a confining polynomial potential");
  const BigReal lo = num(cfg.e_min, "--e-min"), hi = num(cfg.e_max, "--e-max");
  if (!(hi > lo)) throw ConfigError("--e-max must exceed --e-min");

  LevelSearchOptions o;
  o.h = num(cfg.step, "--step");
  o.tol = num(cfg.tol, "--tol");
  o.grid_points = cfg.grid_points;
  o.threads = workers(cfg);

  std::vector<Parity> parities;
  if (cfg.parity != "odd") parities.push_back(Parity::Even);
  if (cfg.parity != "even") parities.push_back(Parity::Odd);

  Settings s = spec_settings(cfg);
  s.emplace_back("g", gt);
  s.emplace_back("e_min", cfg.e_min);
  s.emplace_back("e_max", cfg.e_max);
  s.emplace_back("parity", cfg.parity);
  s.emplace_back("grid_points", std::to_string(cfg.grid_points));
  s.emplace_back("step", cfg.step);
  s.emplace_back("digits", std::to_string(d));

  if (!cfg.scan_output.empty()) {
    TableWriter scan("shoot-scan", cfg.scan_output, cfg.format, s, {"energy", "parity", "m_value"});
    const std::size_t npts = static_cast<std::size_t>(cfg.grid_points);
    auto vals = parallel_map(npts * parities.size(), workers(cfg), [&](std::size_t t) {
      std::size_t i = t % npts;
      Parity p = parities[t / npts];
      BigReal E = lo + (hi - lo) * BigReal(static_cast<long>(i)) / BigReal(static_cast<long>(npts - 1));
      std::string m;
      try {
        m = m_function(spec, E, p, o.h.is_zero() ? default_step(E) : o.h).str(d);
      } catch (const std::runtime_error&) {
        m = "overflow";
      }
      return std::vector<std::string>{E.str(d), parity_name(p), m};
    });
    for (auto& row : vals) scan.add_row(std::move(row));
    scan.commit();
  }

  std::vector<std::pair<BigReal, Parity>> found;
  for (Parity p : parities)
    for (auto& E : find_levels(spec, {lo, hi}, p, o)) found.emplace_back(std::move(E), p);
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  TableWriter w("shoot", cfg.output, cfg.format, s,
                {"level", "parity", "energy", "m_value", "K_bound", "turning_point", "digits"});
  for (std::size_t i = 0; i < found.size(); ++i) {
    ShootOptions so;
    so.h = o.h;
    auto r = integrate(spec, found[i].first, found[i].second, so);
    w.add_row({std::to_string(i), parity_name(found[i].second), found[i].first.str(d), r.m_value.str(d),
               r.K_bound.str(d), r.turning_point.str(d), std::to_string(d)});
  }
  w.commit();
  return 0;
}

int cmd_wkb(const RunConfig& cfg) {
  const std::string gt = g_text(cfg);
  const int d = digits_for(cfg, gt);
  PrecisionScope scope(d);
  const PotentialSpec spec = make_spec(cfg, gt);
  auto pr = predict(spec, predict_options(cfg));
  Settings s = spec_settings(cfg);
  s.emplace_back("g", gt);
  s.emplace_back("convention", cfg.convention);
  s.emplace_back("profile_T", cfg.profile_T);
  s.emplace_back("profile_grid", std::to_string(cfg.profile_grid));
  s.emplace_back("digits", std::to_string(d));
  TableWriter w("wkb", cfg.output, cfg.format, s,
                {"level", "energy", "degeneracy", "splitting", "S0", "A", "prefactor", "digits"});
  for (std::size_t i = 0; i < pr.levels.size(); ++i)
    w.add_row({std::to_string(i), pr.levels[i].energy.str(d), std::to_string(pr.levels[i].degeneracy),
               pr.splitting.str(d), pr.S0.str(d), pr.A.str(d), pr.prefactor.str(d), std::to_string(d)});
  w.commit();
  return 0;
}

namespace {

std::vector<ComparisonPoint> run_scan(const RunConfig& cfg, TableWriter* w) {
  PrecisionScope scope(kParseDigits);
  const auto texts = g_list(cfg);
  const auto grid = parse_grid(texts);
  const PotentialSpec base = make_spec(cfg, texts.front());
  ScanOptions so;
  so.threads = workers(cfg);
  so.digits = cfg.digits;
  so.cutoff = cfg.M;
  so.predict = predict_options(cfg);
  if (cfg.digits && *cfg.digits < 20) throw ConfigError("digits must be >= 20");
  (void)env_digits();  // surface a bad TUNNELKIT_DIGITS as a config error up front

  std::vector<ComparisonPoint> all;
  // chunks of `threads` points so rows reach the file as the sweep goes
  const std::size_t chunk = static_cast<std::size_t>(workers(cfg));
  for (std::size_t start = 0; start < grid.size(); start += chunk) {
    std::vector<BigReal> sub(grid.begin() + static_cast<long>(start),
                             grid.begin() + static_cast<long>(std::min(grid.size(), start + chunk)));
    for (auto& p : splitting_scan(base, sub, so)) {
      if (w) {
        const int d = p.digits_used > 0 ? p.digits_used : kDefaultDigits;
        if (p.ok())
          w->add_row({p.g.str(d), p.dE_num.str(d), p.dE_wkb.str(d), p.rel_diff.str(d), std::to_string(p.M_used),
                      std::to_string(p.digits_used), ""});
        else
          w->add_row({p.g.str(d), "", "", "", std::to_string(p.M_used), std::to_string(p.digits_used), p.error});
      }
      all.push_back(std::move(p));
    }
  }
  return all;
}

Settings scan_settings(const RunConfig& cfg) {
  Settings s = spec_settings(cfg);
  s.emplace_back("g_grid", join(g_list(cfg), ';'));
  if (cfg.M) s.emplace_back("M", std::to_string(*cfg.M));
  s.emplace_back("digits", cfg.digits ? std::to_string(*cfg.digits) : "policy");
  s.emplace_back("convention", cfg.convention);
  return s;
}

}  // namespace

int cmd_splitting(const RunConfig& cfg) {
  (void)family_of(cfg);
  (void)env_digits();
  TableWriter w("splitting", cfg.output, cfg.format, scan_settings(cfg),
                {"g", "dE_num", "dE_wkb", "rel_diff", "M", "digits", "error"});
  auto pts = run_scan(cfg, &w);
  w.commit();
  bool any_failed = std::any_of(pts.begin(), pts.end(), [](const ComparisonPoint& p) { return !p.ok(); });
  return any_failed ? 3 : 0;
}

namespace {

// Reads (g, column) pairs from a CSV with a header row; lines starting
// with '#' are comments, rows with a non-empty error field are skipped.
std::vector<std::pair<BigReal, BigReal>> read_pairs(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::stringstream ss(l);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    if (!l.empty() && l.back() == ',') f.emplace_back();
    return f;
  };
  std::vector<std::pair<BigReal, BigReal>> out;
  std::ptrdiff_t gi = -1, vi = -1, ei = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line);
    if (header.empty()) {
      header = f;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == "g") gi = static_cast<std::ptrdiff_t>(i);
        if (f[i] == column) vi = static_cast<std::ptrdiff_t>(i);
        if (f[i] == "error") ei = static_cast<std::ptrdiff_t>(i);
      }
      if (gi < 0 || vi < 0) throw ConfigError(path + " needs columns g and " + column);
      continue;
    }
    if (ei >= 0 && static_cast<std::size_t>(ei) < f.size() && !f[static_cast<std::size_t>(ei)].empty()) continue;
    if (static_cast<std::size_t>(std::max(gi, vi)) >= f.size() || f[static_cast<std::size_t>(vi)].empty()) continue;
    out.emplace_back(num(f[static_cast<std::size_t>(gi)], "g in " + path),
                     num(f[static_cast<std::size_t>(vi)], column + " in " + path));
  }
  return out;
}

}  // namespace

int cmd_fit(const RunConfig& cfg) {
  const bool exp_model = cfg.model == "exp";
  const std::string column = exp_model ? "dE_num" : "rel_diff";
  const int d = cfg.digits ? *cfg.digits : kDefaultDigits;

  std::vector<std::pair<BigReal, BigReal>> pts;
  Settings s;
  if (!cfg.input.empty()) {
    PrecisionScope scope(std::max(d, kParseDigits));
    pts = read_pairs(cfg.input, column);
    s.emplace_back("input", cfg.input);
  } else {
    (void)family_of(cfg);
    s = scan_settings(cfg);
    for (auto& p : run_scan(cfg, nullptr)) {
      if (!p.ok()) throw std::runtime_error("scan point g=" + p.g.str(6) + " failed: " + p.error);
      pts.emplace_back(p.g, exp_model ? p.dE_num : p.rel_diff);
    }
  }
  s.emplace_back("model", cfg.model);
  if (!exp_model) s.emplace_back("degree", std::to_string(cfg.degree));

  PrecisionScope scope(d);
  std::vector<std::vector<std::string>> rows;
  const std::string npts = std::to_string(pts.size());
  try {
    if (exp_model) {
      auto f = exp_law_fit(pts);
      rows.push_back({"C", f.C.str(d), "", npts, std::to_string(d)});
      rows.push_back({"s", f.s.str(d), "", npts, std::to_string(d)});
      rows.push_back({"residual_norm", f.residual_norm.str(d), "", npts, std::to_string(d)});
    } else {
      auto f = fit_corrections(pts, cfg.degree);
      const char* names[] = {"alpha", "beta", "gamma"};
      for (std::size_t i = 0; i < f.coefficients.size(); ++i)
        rows.push_back({names[i], f.coefficients[i].str(d), f.std_errors[i].str(d), npts, std::to_string(d)});
      rows.push_back({"residual_norm", f.residual_norm.str(d), "", npts, std::to_string(d)});
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  TableWriter w("fit", cfg.output, cfg.format, s, {"name", "value", "std_error", "points", "digits"});
  for (auto& r : rows) w.add_row(std::move(r));
  w.commit();
  return 0;
}

int cmd_band(const RunConfig& cfg) {
  if (family_of(cfg) != Family::Cosine) throw ConfigError("band needs --family cosine");
  const std::string gt = g_text(cfg);
  const int d = digits_for(cfg, gt);
  PrecisionScope scope(d);
  const PotentialSpec spec = make_spec(cfg, gt);
  const int cutoff = cfg.M ? *cfg.M : default_plane_wave_cutoff(spec.g);
  Settings s = spec_settings(cfg);
  s.emplace_back("g", gt);
  s.emplace_back("M", std::to_string(cutoff));
  s.emplace_back("digits", std::to_string(d));
  auto band = band_profile(spec.K, spec.g, cutoff, workers(cfg));
  TableWriter w("band", cfg.output, cfg.format, s, {"k", "theta", "energy", "wkb_energy", "M", "digits"});
  for (const auto& b : band)
    w.add_row({std::to_string(b.k), b.theta.str(d), b.energy.str(d), band_dispersion(spec.g, b.theta).str(d),
               std::to_string(cutoff), std::to_string(d)});
  w.commit();
  return 0;
}

int cmd_delta_c(const RunConfig& cfg) {
  if (family_of(cfg) != Family::TripleWell) throw ConfigError("delta-c needs --family triple-well");
  if (cfg.digits && *cfg.digits < 20) throw ConfigError("digits must be >= 20");
  (void)env_digits();
  PrecisionScope scope(kParseDigits);
  const auto texts = g_list(cfg);
  const auto grid = parse_grid(texts);
  const BigReal lo = num(cfg.delta_lo, "--delta-lo"), hi = num(cfg.delta_hi, "--delta-hi");
  const BigReal tol = num(cfg.tol, "--tol");
  if (!(hi > lo)) throw ConfigError("--delta-hi must exceed --delta-lo");

  Settings s{{"family", cfg.family}, {"g_grid", join(texts, ';')}, {"delta_lo", cfg.delta_lo},
             {"delta_hi", cfg.delta_hi}, {"tol", cfg.tol}};
  if (cfg.M) s.emplace_back("M", std::to_string(*cfg.M));
  s.emplace_back("digits", cfg.digits ? std::to_string(*cfg.digits) : "policy");
  TableWriter w("delta-c", cfg.output, cfg.format, s,
                {"g", "delta_c", "E0", "E1", "E2", "spacing_ratio", "M", "digits", "error"});

  bool any_failed = false;
  const std::size_t chunk = static_cast<std::size_t>(workers(cfg));
  for (std::size_t start = 0; start < grid.size(); start += chunk) {
    const std::size_t n = std::min(grid.size(), start + chunk) - start;
    auto rows = parallel_map(n, workers(cfg), [&](std::size_t i) -> std::vector<std::string> {
      const BigReal& g = grid[start + i];
      try {
        auto r = find_delta_c(g, {lo, hi}, tol, cfg.M, cfg.digits);
        const int d = r.digits_used;
        return {g.str(d), r.delta_c.str(d), r.levels.E0.str(d), r.levels.E1.str(d), r.levels.E2.str(d),
                r.spacing_ratio.str(d), std::to_string(r.levels.M), std::to_string(d), ""};
      } catch (const std::exception& e) {
        return {g.str(kDefaultDigits), "", "", "", "", "", "", "", e.what()};
      }
    });
    for (auto& r : rows) {
      any_failed = any_failed || !r.back().empty();
      w.add_row(std::move(r));
    }
  }
  w.commit();
  return any_failed ? 3 : 0;
}

int cmd_wavefunction(const RunConfig& cfg) {
  const std::string gt = g_text(cfg);
  const int d = digits_for(cfg, gt);
  PrecisionScope scope(d);
  const PotentialSpec spec = make_spec(cfg, gt);
  if (spec.family == Family::Cosine) throw ConfigError("wavefunction supports the Fock-basis families only");
  const BigReal x0 = num(cfg.x_min, "--x-min"), x1 = num(cfg.x_max, "--x-max");
  if (!(x1 > x0)) throw ConfigError("--x-max must exceed --x-min");
  const int M = cfg.M ? *cfg.M : default_fock_cutoff(spec.g);
  auto sp = fock_spectrum(build_fock(spec, M), static_cast<std::size_t>(*cfg.levels), SolverRoute::Auto, true);

  std::vector<BigReal> xs;
  for (int i = 0; i < cfg.x_points; ++i) xs.push_back(x0 + (x1 - x0) * BigReal(i) / BigReal(cfg.x_points - 1));

  Settings s = spec_settings(cfg);
  s.emplace_back("g", gt);
  s.emplace_back("M", std::to_string(M));
  s.emplace_back("x_min", cfg.x_min);
  s.emplace_back("x_max", cfg.x_max);
  s.emplace_back("x_points", std::to_string(cfg.x_points));
  s.emplace_back("digits", std::to_string(d));
  TableWriter w("wavefunction", cfg.output, cfg.format, s, {"level", "energy", "x", "psi"});
  const BigReal small = BigReal::pow10(-d / 2);
  for (std::size_t lvl = 0; lvl < sp.values.size(); ++lvl) {
    auto c = sp.vectors[lvl];
    // fix the overall sign: first sizeable coefficient positive
    for (const auto& v : c)
      if (abs(v) > small) {
        if (v.sign() < 0)
          for (auto& u : c) u = -u;
        break;
      }
    auto psi = wavefunction(c, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
      w.add_row({std::to_string(lvl), sp.values[lvl].str(d), xs[i].str(d), psi[i].str(d)});
  }
  w.commit();
  return 0;
}

int cmd_gy_check(const RunConfig& cfg) {
  Family f = family_of(cfg);
  if (f != Family::DoubleWell && f != Family::Cosine) throw ConfigError("gy-check supports double-well and cosine");
  const std::string gt = g_text(cfg);
  const int d = digits_for(cfg, gt);
  PrecisionScope scope(d);
  const PotentialSpec spec = make_spec(cfg, gt);
  const BigReal T = num(cfg.T, "--T");
  auto r = gelfand_yaglom_check(spec, T);
  Settings s = spec_settings(cfg);
  s.emplace_back("g", gt);
  s.emplace_back("T", cfg.T);
  s.emplace_back("digits", std::to_string(d));
  TableWriter w("gy-check", cfg.output, cfg.format, s,
                {"g", "T", "kappa_sqrt_lambda0", "closed_form", "rel_diff", "psi_end", "psi_free", "lambda0",
                 "digits"});
  BigReal rel = (r.kappa_sqrt_lambda0 - r.closed_form) / r.closed_form;
  w.add_row({spec.g.str(d), T.str(d), r.kappa_sqrt_lambda0.str(d), r.closed_form.str(d), rel.str(d),
             r.psi_end.str(d), r.psi_free.str(d), r.lambda0.str(d), std::to_string(r.digits_used)});
  w.commit();
  return 0;
}

}  // namespace tunnelkit::cli
