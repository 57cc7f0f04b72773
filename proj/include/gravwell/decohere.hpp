#pragma once

#include <gravwell/quadrature.hpp>
#include <gravwell/types.hpp>
#include <gravwell/units.hpp>

#include <span>
#include <vector>

namespace gravwell {

/// Dimensionless bath rates for the master equation in t0 = hbar/E0 units:
///   d rho/ds = -i[h,rho] + i k1 ([u1^2,rho] + [u2^2,rho])
///              - k2 ([u1,[u1,rho]] + [u2,[u2,rho]])
struct BathParams {
  double kappa1 = 0.0;  // m gamma0 Lambda L^2 / E0
  double kappa2 = 0.0;  // 2 m gamma0 kB T L^2 / (hbar E0)
};

BathParams scale_decoherence(const PhysicalParams& p, const ScaledParams& s);

struct PositionOperators {
  MatrixXd u;     // truncated position matrix
  MatrixXd u_sq;  // exact <i|u^2|k> entries (not u*u)
};
PositionOperators position_matrices(int n_d);

/// Two-particle Hamiltonian restricted to the n_d^2 product basis, in E0
/// units. With include_interaction the gravitational coupling from the
/// J-table is added (requires t.pmax >= 2 n_d); otherwise the free spectrum.
MatrixXd product_hamiltonian(const ScaledParams& s, const JTable* t, int n_d,
                             bool include_interaction);

/// rho for the pure product state |n1 n2> in the n_d^2 product basis.
MatrixXcd product_state_density(int n1, int n2, int n_d);

struct TrajectorySample {
  double time = 0.0;      // t0 units
  double purity = 0.0;    // tr(rho^2)
  double trace_err = 0.0; // |tr(rho) - 1|
  double min_eig = 0.0;   // smallest eigenvalue of rho
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // includes t = 0
  MatrixXcd rho_final;
  double max_herm_drift = 0.0;  // per-step ||rho - rho^dag||_max before re-symmetrization
  bool positivity_flag = false; // any sampled min_eig < -1e-8
};

struct EvolveOptions {
  int sample_stride = 1;     // record every n-th step (t = 0 and the last always)
  double trace_tol = 1e-6;   // abort threshold on |tr(rho) - 1|
};

/// Classic fixed-step RK4 on the generator above, re-symmetrizing rho each
/// step. Requires dt * max(||h||, k1, k2 n_d^2) <= 0.1. Throws numeric_error
/// when the trace drifts past trace_tol or purity exceeds 1 + 1e-9 (smaller
/// dt needed).
Trajectory evolve(const MatrixXcd& rho0, const MatrixXd& h, const BathParams& b, double dt,
                  int steps, const EvolveOptions& opt = {});

struct DecoherenceFit {
  double tau_d = 0.0;       // t0 units; +inf when no decay was seen
  double r_squared = 0.0;
  bool decohered = false;
  std::size_t window_begin = 0, window_end = 0;  // fitted sample range [begin, end)
};

/// Exponential-decay fit of ln purity over the post-transient window (first
/// 5% of samples dropped, window closed after one e-fold so the late
/// mixed-state plateau stays out). tau_d = -1/slope. Requires >= 50 samples;
/// a purity drop under 1% reports the no-decoherence sentinel tau_d = inf.
DecoherenceFit decoherence_time(std::span<const double> time, std::span<const double> purity);
DecoherenceFit decoherence_time(const Trajectory& traj);

}  // namespace gravwell
