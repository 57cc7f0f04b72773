#pragma once

#include <gravwell/types.hpp>

#include <cmath>
#include <numbers>

namespace gravwell {

/// CODATA 2018 values. Carried explicitly so emitted tables pin the constants
/// they were produced with.
struct Constants {
  double G = 6.67430e-11;         // m^3 kg^-1 s^-2
  double hbar = 1.054571817e-34;  // J s
  double kB = 1.380649e-23;       // J / K
};

/// Laboratory-frame inputs, SI throughout. Both particles share one mass.
struct PhysicalParams {
  double mass = 1e-17;        // kg
  double well_width = 50e-6;  // m
  double separation = 1e-6;   // m, wall to wall
  double temperature = 0.0;   // K
  double damping = 0.0;       // 1/s
  double cutoff = 0.0;        // 1/s
  Constants constants{};

  void validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw invalid_parameter("mass must be positive and finite");
    if (!(well_width > 0.0) || !std::isfinite(well_width))
      throw invalid_parameter("well_width must be positive and finite");
    if (!(separation > 0.0) || !std::isfinite(separation))
      throw invalid_parameter("separation must be positive and finite");
    if (temperature < 0.0 || !std::isfinite(temperature))
      throw invalid_parameter("temperature must be >= 0");
    if (damping < 0.0 || !std::isfinite(damping))
      throw invalid_parameter("damping must be >= 0");
    if (cutoff < 0.0 || !std::isfinite(cutoff))
      throw invalid_parameter("cutoff must be >= 0");
  }
};

/// The dimensionless problem plus the units that map back to SI. On the unit
/// square the single-particle level n carries kinetic energy n^2/2 and the
/// interaction is -gamma / (u1 + u2 + delta), all in units of energy_unit.
struct ScaledParams {
  double gamma = 0.0;        // G m^3 L / (pi^2 hbar^2)
  double delta = 0.0;        // d / L
  int nmax = 2;              // basis size per particle
  double energy_unit = 0.0;  // J, E0 = pi^2 hbar^2 / (m L^2)
  double time_unit = 0.0;    // s, hbar / E0

  void validate() const {
    if (gamma < 0.0 || !std::isfinite(gamma))
      throw invalid_parameter("gamma must be >= 0");
    if (!(delta > 0.0)) throw invalid_parameter("delta must be > 0");
    if (nmax < 2) throw invalid_parameter("nmax must be >= 2");
    if (!(energy_unit > 0.0)) throw invalid_parameter("energy_unit must be > 0");
    if (!(time_unit > 0.0)) throw invalid_parameter("time_unit must be > 0");
  }
};

inline ScaledParams scale_params(const PhysicalParams& p, int nmax) {
  p.validate();
  if (nmax < 2) throw invalid_parameter("nmax must be >= 2");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double hbar2 = p.constants.hbar * p.constants.hbar;
  ScaledParams s;
  s.gamma = p.constants.G * p.mass * p.mass * p.mass * p.well_width / (pi2 * hbar2);
  s.delta = p.separation / p.well_width;
  s.nmax = nmax;
  s.energy_unit = pi2 * hbar2 / (p.mass * p.well_width * p.well_width);
  s.time_unit = p.constants.hbar / s.energy_unit;
  s.validate();
  return s;
}

/// Inverse of scale_params on the geometry. From q = m L^2 and r = m^3 L one
/// gets m^5 = r^2 / q. Requires gamma > 0.
inline PhysicalParams unscale_params(const ScaledParams& s, const Constants& c = {}) {
  s.validate();
  if (!(s.gamma > 0.0)) throw invalid_parameter("unscale_params requires gamma > 0");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double hbar2 = c.hbar * c.hbar;
  const double q = pi2 * hbar2 / s.energy_unit;  // m L^2
  const double r = s.gamma * pi2 * hbar2 / c.G;  // m^3 L
  PhysicalParams p;
  p.constants = c;
  p.mass = std::pow(r * r / q, 0.2);
  p.well_width = std::sqrt(q / p.mass);
  p.separation = s.delta * p.well_width;
  return p;
}

struct AdiabaticityResult {
  double tau_c = 0.0;  // s, approach time (d_ini - d_f) / v
  double tau_o = 0.0;  // s, oscillation time 2 pi hbar / E_ini
  double ratio = 0.0;
  bool pass = false;
};

/// The approach counts as adiabatic when tau_c / tau_o clears the threshold.
/// E_ini is the single-particle ground energy pi^2 hbar^2 / (2 m L^2).
inline AdiabaticityResult adiabaticity_check(double d_ini, double d_f, double v,
                                             const PhysicalParams& p,
                                             double threshold = 100.0) {
  p.validate();
  if (!(d_f > 0.0) || !(d_ini > d_f))
    throw invalid_parameter("adiabaticity_check requires d_ini > d_f > 0");
  if (!(v > 0.0)) throw invalid_parameter("approach speed must be > 0");
  const double pi = std::numbers::pi;
  const double e_ini = pi * pi * p.constants.hbar * p.constants.hbar /
                       (2.0 * p.mass * p.well_width * p.well_width);
  AdiabaticityResult r;
  r.tau_c = (d_ini - d_f) / v;
  r.tau_o = 2.0 * pi * p.constants.hbar / e_ini;
  r.ratio = r.tau_c / r.tau_o;
  r.pass = r.ratio >= threshold;
  return r;
}

struct PseudopotentialResult {
  double k_wavenumber = 0.0;   // 1/m
  double kb_product = 0.0;     // dimensionless
  double density_ratio = 0.0;  // rho^(-1/3) / b
  bool kb_pass = false;
  bool density_pass = false;
};

/// Contact-interaction reduction conditions: k b << 1 and rho^(-1/3) >> b.
/// k uses the ground-state kinetic energy E0/2, so k L = pi exactly.
inline PseudopotentialResult pseudopotential_check(const PhysicalParams& p, double density,
                                                   double range_b, double kb_max = 0.1,
                                                   double density_ratio_min = 10.0) {
  p.validate();
  if (!(density > 0.0)) throw invalid_parameter("density must be > 0");
  if (!(range_b > 0.0)) throw invalid_parameter("interaction range b must be > 0");
  const double pi = std::numbers::pi;
  const double e_kin = pi * pi * p.constants.hbar * p.constants.hbar /
                       (2.0 * p.mass * p.well_width * p.well_width);
  PseudopotentialResult r;
  r.k_wavenumber = std::sqrt(2.0 * p.mass * e_kin) / p.constants.hbar;
  r.kb_product = r.k_wavenumber * range_b;
  r.density_ratio = std::pow(density, -1.0 / 3.0) / range_b;
  r.kb_pass = r.kb_product <= kb_max;
  r.density_pass = r.density_ratio >= density_ratio_min;
  return r;
}

struct FeasibilityReport {
  double tau_c = 0.0;
  double tau_o = 0.0;
  double adiabatic_ratio = 0.0;
  double k_wavenumber = 0.0;
  double kb_product = 0.0;
  double density_ratio = 0.0;
  bool adiabatic_pass = false;
  bool kb_pass = false;
  bool density_pass = false;
};

struct FeasibilityThresholds {
  double adiabatic_ratio_min = 100.0;
  double kb_max = 0.1;
  double density_ratio_min = 10.0;
};

inline FeasibilityReport feasibility_report(const PhysicalParams& p, double d_ini, double v,
                                            double density, double range_b,
                                            const FeasibilityThresholds& th = {}) {
  const AdiabaticityResult a =
      adiabaticity_check(d_ini, p.separation, v, p, th.adiabatic_ratio_min);
  const PseudopotentialResult q =
      pseudopotential_check(p, density, range_b, th.kb_max, th.density_ratio_min);
  FeasibilityReport r;
  r.tau_c = a.tau_c;
  r.tau_o = a.tau_o;
  r.adiabatic_ratio = a.ratio;
  r.adiabatic_pass = a.pass;
  r.k_wavenumber = q.k_wavenumber;
  r.kb_product = q.kb_product;
  r.density_ratio = q.density_ratio;
  r.kb_pass = q.kb_pass;
  r.density_pass = q.density_pass;
  return r;
}

}  // namespace gravwell
