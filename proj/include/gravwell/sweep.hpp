#pragma once

#include <gravwell/spectral.hpp>
#include <gravwell/types.hpp>
#include <gravwell/units.hpp>

#include <functional>
#include <string>
#include <vector>

namespace gravwell {

/// Supplies the J-table for a (delta, pmax) request; the CLI plugs the disk
/// cache in here, library callers default to a direct build.
using TableProvider = std::function<JTable(double delta, int pmax)>;

struct SweepContext {
  int nmax = 60;
  int k = 6;                 // levels per distance point
  int n_w = 0;               // witness dimension; 0 means nmax
  double accuracy = 1e-10;   // quadrature accuracy
  int workers = 0;
  TableProvider tables;      // empty: build_table on demand
  /// Ground-state-only grid cells use the iterative lowest-k path; the dense
  /// path stays the default everywhere else and serves as its oracle.
  bool grid_iterative = true;

  JTable table(double delta, int pmax) const;
  int witness_dim() const { return n_w > 0 ? n_w : nmax; }
};

struct LevelRow {
  double delta = 0.0;
  int level = 0;           // 1-based energy rank
  double energy = 0.0;     // E0 units
  Sector sector = Sector::symmetric;
  int n1 = 0, n2 = 0;
  double dE = 0.0;         // energy minus (n1^2+n2^2)/2
  double residual = 0.0;
};

struct GroundRow {
  double delta = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double witness = 0.0;
};

struct DistanceSweepResult {
  std::vector<LevelRow> rows;     // k rows per delta, delta-major
  std::vector<GroundRow> ground;  // one row per delta
};

/// Lowest-k spectrum plus ground-state entanglement along a descending list
/// of separations (the adiabatic approach). One J-table per delta.
DistanceSweepResult distance_sweep(const PhysicalParams& p, const std::vector<double>& deltas,
                                   const SweepContext& ctx);

/// Energy shifts dE_n = E_n - (n1^2+n2^2)/2 for the lowest K levels at the
/// separation carried by p, ordered by energy rank.
std::vector<LevelRow> spectrum_shift(const PhysicalParams& p, int K, const SweepContext& ctx);

struct EntropyRow {
  int level = 0;
  double energy = 0.0;
  double entropy = 0.0;
  double witness = 0.0;
};

struct LogFit {
  double a = 0.0, b = 0.0;  // S ~ a + b ln n
  double r_squared = 0.0;
};

struct EntropySpectrumResult {
  std::vector<EntropyRow> rows;
  LogFit fit;
};

EntropySpectrumResult entropy_spectrum(const PhysicalParams& p, int K, const SweepContext& ctx);

struct GridRow {
  double mass = 0.0;       // kg
  double width = 0.0;      // m
  double gamma = 0.0;
  double delta = 0.0;
  double entropy = 0.0;
  double witness = 0.0;
  bool ok = false;
  std::string error;       // failed cells carry the message, sweep continues
};

/// Ground-state S and w over a mass x width grid at fixed separation d.
/// Cells run in parallel; rows come back in (mass-major) parameter order.
std::vector<GridRow> mass_width_grid(const PhysicalParams& prototype,
                                     const std::vector<double>& masses,
                                     const std::vector<double>& widths, double d,
                                     const SweepContext& ctx);

struct ConvergeRow {
  int nmax = 0;
  double energy = 0.0;    // ground, E0 units
  double rel_diff = 0.0;  // |E - E_prev| / |E|; 0 for the first row
};

/// Ground energy vs basis size; nmaxes must be strictly increasing. One
/// J-table sized for the largest request serves all of them.
std::vector<ConvergeRow> convergence_study(const PhysicalParams& p,
                                           const std::vector<int>& nmaxes,
                                           const SweepContext& ctx);

/// Least-squares fit of y ~ a + b ln(n) over n = 1..y.size().
LogFit fit_log(const std::vector<double>& y);

/// Spearman rank correlation; ties get average ranks.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gravwell
