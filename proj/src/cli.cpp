#include <gravwell/cli.hpp>

#include <gravwell/cache.hpp>
#include <gravwell/config.hpp>
#include <gravwell/csv.hpp>
#include <gravwell/decohere.hpp>
#include <gravwell/entangle.hpp>
#include <gravwell/sweep.hpp>
#include <gravwell/version.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace gravwell {

namespace {

ScaledParams resolve_scaled(const RunConfig& cfg) {
  ScaledParams s = scale_params(cfg.physical, cfg.nmax);
  if (!std::isnan(cfg.gamma_override)) s.gamma = cfg.gamma_override;
  return s;
}

SweepContext make_context(const RunConfig& cfg) {
  SweepContext ctx;
  ctx.nmax = cfg.nmax;
  ctx.k = cfg.sweep_levels;
  ctx.n_w = cfg.n_w;
  ctx.accuracy = cfg.quad_accuracy;
  ctx.workers = cfg.workers;
  ctx.tables = [&cfg](double delta, int pmax) {
    return cache_get(cfg.cache_dir, delta, pmax, cfg.quad_accuracy, cfg.workers);
  };
  return ctx;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = cfg.out_dir / name;
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw config_error("cannot open output file: " + path.string());
  return os;
}

void write_header(CsvWriter& w, const RunConfig& cfg, const std::string& subcommand,
                  const std::string& schema) {
  w.meta("gravwell", kVersion);
  w.meta("subcommand", subcommand);
  w.meta("schema", schema);
  w.meta("generated_at", timestamp_line());
  for (const auto& [k, v] : cfg.dump()) w.meta(k, v);
}

int cmd_solve(const RunConfig& cfg) {
  const ScaledParams s = resolve_scaled(cfg);
  const JTable t = cache_get(cfg.cache_dir, s.delta, 2 * cfg.nmax, cfg.quad_accuracy, cfg.workers);
  SolveOptions opt;
  opt.workers = cfg.workers;
  const EigenSolution sol = solve_lowest(s, t, cfg.solve_levels, opt);
  const int n_w = cfg.n_w > 0 ? cfg.n_w : cfg.nmax;

  auto os = open_output(cfg, "solve.csv");
  CsvWriter w(os);
  write_header(w, cfg, "solve", "solve-v1");
  w.meta("gamma", csv_num(s.gamma));
  w.meta("delta", csv_num(s.delta));
  w.meta("energy_unit_J", csv_num(s.energy_unit));
  w.meta("time_unit_s", csv_num(s.time_unit));
  w.columns({"level", "energy_E0", "sector", "n1", "n2", "dE", "S", "w", "residual"});
  int rank = 1;
  for (const Level& lv : sol.levels) {
    const double dE = lv.energy - 0.5 * (lv.n1 * lv.n1 + lv.n2 * lv.n2);
    w.row({csv_num(rank++), csv_num(lv.energy), to_string(lv.sector), csv_num(lv.n1),
           csv_num(lv.n2), csv_num(dE), csv_num(entropy(lv.coefficients)),
           csv_num(witness(lv.coefficients, n_w)), csv_num(lv.residual)});
  }
  return 0;
}

int cmd_sweep_distance(const RunConfig& cfg) {
  SweepContext ctx = make_context(cfg);
  PhysicalParams p = cfg.physical;
  const auto deltas = cfg.delta_list();
  const DistanceSweepResult res = distance_sweep(p, deltas, ctx);

  {
    auto os = open_output(cfg, "levels.csv");
    CsvWriter w(os);
    write_header(w, cfg, "sweep-distance", "levels-v1");
    w.columns({"delta", "level", "energy_E0", "sector", "n1", "n2", "dE"});
    for (const LevelRow& r : res.rows)
      w.row({csv_num(r.delta), csv_num(r.level), csv_num(r.energy), to_string(r.sector),
             csv_num(r.n1), csv_num(r.n2), csv_num(r.dE)});
  }
  {
    auto os = open_output(cfg, "distance_ground.csv");
    CsvWriter w(os);
    write_header(w, cfg, "sweep-distance", "distance-ground-v1");
    w.columns({"delta", "energy_E0", "S", "w"});
    for (const GroundRow& r : res.ground)
      w.row({csv_num(r.delta), csv_num(r.energy), csv_num(r.entropy), csv_num(r.witness)});
  }
  return 0;
}

int cmd_spectrum_shift(const RunConfig& cfg) {
  SweepContext ctx = make_context(cfg);
  const auto rows = spectrum_shift(cfg.physical, cfg.spectrum_levels, ctx);
  auto os = open_output(cfg, "levels.csv");
  CsvWriter w(os);
  write_header(w, cfg, "spectrum-shift", "levels-v1");
  w.columns({"delta", "level", "energy_E0", "sector", "n1", "n2", "dE"});
  for (const LevelRow& r : rows)
    w.row({csv_num(r.delta), csv_num(r.level), csv_num(r.energy), to_string(r.sector),
           csv_num(r.n1), csv_num(r.n2), csv_num(r.dE)});
  return 0;
}

int cmd_entropy_spectrum(const RunConfig& cfg) {
  SweepContext ctx = make_context(cfg);
  const EntropySpectrumResult res = entropy_spectrum(cfg.physical, cfg.spectrum_levels, ctx);
  auto os = open_output(cfg, "entropy.csv");
  CsvWriter w(os);
  write_header(w, cfg, "entropy-spectrum", "entropy-v1");
  w.meta("fit_a", csv_num(res.fit.a));
  w.meta("fit_b", csv_num(res.fit.b));
  w.meta("fit_r_squared", csv_num(res.fit.r_squared));
  w.columns({"level", "energy_E0", "S", "w"});
  for (const EntropyRow& r : res.rows)
    w.row({csv_num(r.level), csv_num(r.energy), csv_num(r.entropy), csv_num(r.witness)});
  return 0;
}

int cmd_grid(const RunConfig& cfg) {
  SweepContext ctx = make_context(cfg);
  const auto rows =
      mass_width_grid(cfg.physical, cfg.grid_masses(), cfg.grid_widths(), cfg.grid_separation, ctx);
  auto os = open_output(cfg, "grid.csv");
  CsvWriter w(os);
  write_header(w, cfg, "grid-mass-width", "grid-v1");
  w.columns({"m_kg", "L_m", "gamma", "delta", "S", "w"});
  int failures = 0;
  for (const GridRow& r : rows) {
    if (!r.ok) {
      ++failures;
      std::cerr << "warning: grid cell m=" << r.mass << " L=" << r.width
                << " failed: " << r.error << "\n";
    }
    w.row({csv_num(r.mass), csv_num(r.width), csv_num(r.gamma), csv_num(r.delta),
           csv_num(r.entropy), csv_num(r.witness)});
  }
  return failures == 0 ? 0 : 2;
}

int cmd_converge(const RunConfig& cfg) {
  SweepContext ctx = make_context(cfg);
  const auto rows = convergence_study(cfg.physical, cfg.converge_list(), ctx);
  auto os = open_output(cfg, "converge.csv");
  CsvWriter w(os);
  write_header(w, cfg, "converge", "converge-v1");
  w.meta("rel_threshold", csv_num(cfg.converge_rel_threshold));
  w.columns({"nmax", "E_ground_E0", "rel_diff"});
  for (const ConvergeRow& r : rows)
    w.row({csv_num(r.nmax), csv_num(r.energy), csv_num(r.rel_diff)});
  return 0;
}

int cmd_decohere(const RunConfig& cfg) {
  const ScaledParams s = resolve_scaled(cfg);
  BathParams bath = scale_decoherence(cfg.physical, s);
  if (!std::isnan(cfg.kappa1_override)) bath.kappa1 = cfg.kappa1_override;
  if (!std::isnan(cfg.kappa2_override)) bath.kappa2 = cfg.kappa2_override;

  MatrixXd h;
  JTable t;
  if (cfg.decohere_hamiltonian == "coupled" || cfg.decohere_initial == "coupled") {
    t = cache_get(cfg.cache_dir, s.delta, 2 * cfg.n_d, cfg.quad_accuracy, cfg.workers);
  }
  if (cfg.decohere_hamiltonian == "coupled")
    h = product_hamiltonian(s, &t, cfg.n_d, true);
  else
    h = product_hamiltonian(s, nullptr, cfg.n_d, false);

  MatrixXcd rho0;
  if (cfg.decohere_initial == "product") {
    rho0 = product_state_density(1, 1, cfg.n_d);
  } else {
    const MatrixXd hc = product_hamiltonian(s, &t, cfg.n_d, true);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hc);
    if (es.info() != Eigen::Success) throw numeric_error("decohere: ground-state solve failed");
    const VectorXd g = es.eigenvectors().col(0);
    rho0 = (g * g.transpose()).cast<std::complex<double>>();
  }

  EvolveOptions opt;
  opt.sample_stride = cfg.decohere_sample_stride;
  const Trajectory traj = evolve(rho0, h, bath, cfg.decohere_dt, cfg.decohere_steps, opt);
  const DecoherenceFit fit = decoherence_time(traj);

  auto os = open_output(cfg, "decohere.csv");
  CsvWriter w(os);
  write_header(w, cfg, "decohere", "decohere-v1");
  w.meta("caveat",
         "bath model assumes weak coupling to a large environment with fast memory decay; "
         "rates outside that regime are order-of-magnitude estimates");
  w.meta("kappa1", csv_num(bath.kappa1));
  w.meta("kappa2", csv_num(bath.kappa2));
  w.meta("tau_d_t0", fit.decohered ? csv_num(fit.tau_d) : "inf");
  w.meta("fit_r_squared", csv_num(fit.r_squared));
  w.meta("positivity_flag", traj.positivity_flag ? "1" : "0");
  w.columns({"time_t0", "purity", "trace_err", "min_eig"});
  for (const TrajectorySample& sm : traj.samples)
    w.row({csv_num(sm.time), csv_num(sm.purity), csv_num(sm.trace_err), csv_num(sm.min_eig)});
  if (traj.positivity_flag)
    std::cerr << "warning: density matrix developed eigenvalues below -1e-8 "
                 "(generator is not completely positive)\n";
  return 0;
}

int cmd_feasibility(const RunConfig& cfg) {
  const FeasibilityReport r =
      feasibility_report(cfg.physical, cfg.feas_d_ini, cfg.feas_speed, cfg.feas_density,
                         cfg.feas_range_b, cfg.thresholds);
  auto os = open_output(cfg, "feasibility.csv");
  CsvWriter w(os);
  write_header(w, cfg, "feasibility", "feasibility-v1");
  w.columns({"tau_c_s", "tau_o_s", "ratio", "k_1_per_m", "kb", "density_ratio", "pass_flags"});
  const std::string flags = std::string("adiabatic=") + (r.adiabatic_pass ? "1" : "0") +
                            "|kb=" + (r.kb_pass ? "1" : "0") +
                            "|density=" + (r.density_pass ? "1" : "0");
  w.row({csv_num(r.tau_c), csv_num(r.tau_o), csv_num(r.adiabatic_ratio),
         csv_num(r.k_wavenumber), csv_num(r.kb_product), csv_num(r.density_ratio), flags});
  return 0;
}

int cmd_wavefunction(const RunConfig& cfg) {
  const ScaledParams s = resolve_scaled(cfg);
  const JTable t = cache_get(cfg.cache_dir, s.delta, 2 * cfg.nmax, cfg.quad_accuracy, cfg.workers);
  SolveOptions opt;
  opt.workers = cfg.workers;
  const EigenSolution sol = solve_lowest(s, t, cfg.wavefunction_level, opt);
  const Level& lv = sol.levels.back();
  const MatrixXd grid = wavefunction_grid(lv.coefficients, cfg.wavefunction_resolution);

  auto os = open_output(cfg, "wavefunction.csv");
  CsvWriter w(os);
  write_header(w, cfg, "wavefunction", "wavefunction-v1");
  w.meta("level", csv_num(cfg.wavefunction_level));
  w.meta("energy_E0", csv_num(lv.energy));
  w.meta("sector", to_string(lv.sector));
  w.meta("n1", csv_num(lv.n1));
  w.meta("n2", csv_num(lv.n2));
  w.columns({"u1", "u2", "psi"});
  const int res = cfg.wavefunction_resolution;
  for (int g1 = 0; g1 < res; ++g1)
    for (int g2 = 0; g2 < res; ++g2)
      w.row({csv_num(static_cast<double>(g1) / (res - 1)),
             csv_num(static_cast<double>(g2) / (res - 1)), csv_num(grid(g1, g2))});
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"gravwell: two-particle square-well spectra, gravitationally induced "
               "entanglement, and open-system decoherence"};
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> sets;
  std::string out_dir, cache_dir;
  int workers = -1;
  bool paper_scale = false;

  app.add_option("--config", config_file, "key = value configuration file");
  app.add_option("--set", sets, "override one key, e.g. --set scaled.nmax=40")
      ->take_all();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--cache", cache_dir, "J-table cache directory");
  app.add_option("--workers", workers, "worker threads (0 = hardware)");
  app.add_flag("--paper-scale", paper_scale, "nmax=100, 1000 spectrum levels");

  const struct {
    const char* name;
    const char* desc;
    int (*fn)(const RunConfig&);
  } subs[] = {
      {"solve", "one-point eigensolve with an entanglement report", cmd_solve},
      {"sweep-distance", "lowest levels and ground entanglement vs separation",
       cmd_sweep_distance},
      {"spectrum-shift", "energy shifts of the lowest levels", cmd_spectrum_shift},
      {"entropy-spectrum", "entanglement entropy per level with a log fit",
       cmd_entropy_spectrum},
      {"grid-mass-width", "ground-state S and w over a mass/width grid", cmd_grid},
      {"converge", "ground energy vs basis size", cmd_converge},
      {"decohere", "density-matrix evolution under the bath generator", cmd_decohere},
      {"feasibility", "adiabaticity and pseudopotential conditions", cmd_feasibility},
      {"wavefunction", "position-basis grid of one eigenstate", cmd_wavefunction},
  };
  for (const auto& s : subs) app.add_subcommand(s.name, s.desc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    RunConfig cfg;
    if (!config_file.empty()) apply_config_file(cfg, config_file);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw config_error("--set expects key=value, got '" + kv + "'");
      apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
    if (workers >= 0) cfg.workers = workers;
    if (paper_scale) cfg.paper_scale = true;
    cfg.finalize();

    for (const auto& s : subs)
      if (app.got_subcommand(s.name)) return s.fn(cfg);
    throw config_error("no subcommand given");
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const invalid_parameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gravwell
