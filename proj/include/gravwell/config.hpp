#pragma once

#include <gravwell/types.hpp>
#include <gravwell/units.hpp>

#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace gravwell {

/// Flat key = value configuration with dotted section prefixes. Precedence:
/// built-in defaults, then --paper-scale, then the config file, then --set
/// flags. A fully defaulted config is the paper's running example
/// (m = 1e-17 kg, L = 50 um, d = 1 um).
struct RunConfig {
  PhysicalParams physical{};

  // scaled overrides
  double gamma_override = std::numeric_limits<double>::quiet_NaN();  // NaN: use physical
  int nmax = 60;
  int n_w = 0;  // witness dimension, 0 = nmax
  int n_d = 8;  // decoherence truncation per particle

  int solve_levels = 1;
  int sweep_levels = 6;  // levels per distance point
  double quad_accuracy = 1e-10;

  // distance sweep grid (log-spaced descending), or an explicit list
  double delta_max = 2.0;
  double delta_min = 0.02;
  int delta_count = 25;
  std::string deltas;  // e.g. "2,1,0.5"; overrides the grid when nonempty

  int spectrum_levels = 200;

  double grid_mass_min = 1e-18;   // kg, log-spaced
  double grid_mass_max = 2e-17;
  int grid_mass_count = 24;
  double grid_width_min = 25e-6;  // m, linear
  double grid_width_max = 150e-6;
  int grid_width_count = 24;
  double grid_separation = 1e-6;  // m, fixed d

  std::string converge_nmaxes = "20,40,60,80,100";

  // decoherence run
  double decohere_dt = 5e-4;  // t0 units
  int decohere_steps = 10000;
  int decohere_sample_stride = 10;
  std::string decohere_initial = "product";      // product | coupled
  std::string decohere_hamiltonian = "coupled";  // coupled | free
  double kappa1_override = std::numeric_limits<double>::quiet_NaN();
  double kappa2_override = std::numeric_limits<double>::quiet_NaN();

  // feasibility inputs the paper leaves open; reported, never asserted
  double feas_d_ini = 100e-6;       // m
  double feas_speed = 1e-6;         // m/s
  double feas_density = 8e12;       // 1/m^3 (~ L^-3 at the default width)
  double feas_range_b = 100e-9;     // m

  FeasibilityThresholds thresholds{};
  double converge_rel_threshold = 1e-4;

  int wavefunction_resolution = 201;
  int wavefunction_level = 1;

  std::filesystem::path out_dir = "out";
  std::filesystem::path cache_dir = "cache";
  int workers = 0;
  bool paper_scale = false;

  // set when the corresponding key appears in a file or flag, so paper-scale
  // only fills values the user left alone
  bool nmax_explicit = false;
  bool spectrum_levels_explicit = false;

  /// Applies run.paper_scale (nmax 100, spectrum levels 1000 unless those
  /// keys were set explicitly), then validates.
  void finalize();

  /// Key/value view of every setting, sorted by key; lands in CSV headers so
  /// each output is reproducible from its own header block.
  std::vector<std::pair<std::string, std::string>> dump() const;

  std::vector<double> delta_list() const;
  std::vector<int> converge_list() const;
  std::vector<double> grid_masses() const;
  std::vector<double> grid_widths() const;

  void validate() const;
};

/// Applies `key = value`; unknown keys raise config_error listing every valid
/// key.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses a config file of key = value lines ('#' comments allowed).
void apply_config_file(RunConfig& cfg, const std::filesystem::path& file);

std::vector<std::string> known_config_keys();

}  // namespace gravwell
