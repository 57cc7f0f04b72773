#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gravwell/units.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace gravwell;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("scale_params: paper running example") {
  PhysicalParams p;  // defaults: m = 1e-17 kg, L = 50 um, d = 1 um
  const ScaledParams s = scale_params(p, 60);

  CHECK(s.delta == doctest::Approx(0.02).epsilon(1e-14));

  // recomputed from the raw formulas with the same constants
  const double hbar = 1.054571817e-34, G = 6.67430e-11;
  const double gamma_ref = G * 1e-51 * 50e-6 / (kPi * kPi * hbar * hbar);
  const double e0_ref = kPi * kPi * hbar * hbar / (1e-17 * 50e-6 * 50e-6);
  CHECK(s.gamma == doctest::Approx(gamma_ref).epsilon(1e-13));
  CHECK(s.energy_unit == doctest::Approx(e0_ref).epsilon(1e-13));
  CHECK(s.time_unit == doctest::Approx(hbar / e0_ref).epsilon(1e-13));

  // magnitudes quoted for this parameter point
  CHECK(s.gamma == doctest::Approx(30.4).epsilon(5e-3));
  CHECK(s.energy_unit == doctest::Approx(4.39e-42).epsilon(5e-3));
}

TEST_CASE("gamma homogeneity: m^3 and linear L") {
  PhysicalParams p;
  const ScaledParams s1 = scale_params(p, 8);
  p.mass *= 2.0;
  const ScaledParams s2 = scale_params(p, 8);
  CHECK(s2.gamma == doctest::Approx(8.0 * s1.gamma).epsilon(1e-14));
  CHECK(s2.delta == doctest::Approx(s1.delta).epsilon(1e-14));  // delta independent of m

  p.mass /= 2.0;
  p.well_width *= 3.0;
  const ScaledParams s3 = scale_params(p, 8);
  CHECK(s3.gamma == doctest::Approx(3.0 * s1.gamma).epsilon(1e-14));
}

TEST_CASE("gamma strictly increasing in m and L") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> um(1e-19, 1e-16), ul(1e-6, 1e-3);
  for (int i = 0; i < 50; ++i) {
    PhysicalParams a, b;
    a.mass = um(rng);
    a.well_width = ul(rng);
    b = a;
    b.mass = a.mass * 1.01;
    CHECK(scale_params(b, 4).gamma > scale_params(a, 4).gamma);
    b = a;
    b.well_width = a.well_width * 1.01;
    CHECK(scale_params(b, 4).gamma > scale_params(a, 4).gamma);
  }
}

TEST_CASE("scale/unscale roundtrip to 12 significant digits") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> um(1e-19, 1e-16), ul(5e-6, 5e-4), ud(0.005, 2.0);
  for (int i = 0; i < 100; ++i) {
    PhysicalParams p;
    p.mass = um(rng);
    p.well_width = ul(rng);
    p.separation = ud(rng) * p.well_width;
    const ScaledParams s = scale_params(p, 16);
    const PhysicalParams q = unscale_params(s, p.constants);
    CHECK(q.mass == doctest::Approx(p.mass).epsilon(1e-12));
    CHECK(q.well_width == doctest::Approx(p.well_width).epsilon(1e-12));
    CHECK(q.separation == doctest::Approx(p.separation).epsilon(1e-12));
  }
}

TEST_CASE("invalid physical input throws") {
  PhysicalParams p;
  p.mass = 0.0;
  CHECK_THROWS_AS(scale_params(p, 8), invalid_parameter);
  p = PhysicalParams{};
  p.well_width = -1.0;
  CHECK_THROWS_AS(scale_params(p, 8), invalid_parameter);
  p = PhysicalParams{};
  CHECK_THROWS_AS(scale_params(p, 1), invalid_parameter);
  p.temperature = -0.1;
  CHECK_THROWS_AS(scale_params(p, 8), invalid_parameter);
}

TEST_CASE("adiabaticity: tau_c and tau_o") {
  PhysicalParams p;
  const AdiabaticityResult r = adiabaticity_check(50e-6, 1e-6, 49e-6, p);
  CHECK(r.tau_c == doctest::Approx(1.0).epsilon(1e-14));

  // tau_o = 2 pi hbar / E_ini with E_ini = E0/2, i.e. 4 pi hbar / E0
  const ScaledParams s = scale_params(p, 8);
  CHECK(r.tau_o == doctest::Approx(4.0 * kPi * p.constants.hbar / s.energy_unit).epsilon(1e-13));
  CHECK(r.ratio == doctest::Approx(r.tau_c / r.tau_o).epsilon(1e-14));

  CHECK_THROWS_AS(adiabaticity_check(1e-6, 50e-6, 1e-6, p), invalid_parameter);
  CHECK_THROWS_AS(adiabaticity_check(50e-6, 1e-6, 0.0, p), invalid_parameter);
}

TEST_CASE("pseudopotential: ground-state wave number is pi/L") {
  PhysicalParams p;
  const PseudopotentialResult r = pseudopotential_check(p, 8e12, 100e-9);
  CHECK(r.k_wavenumber * p.well_width == doctest::Approx(kPi).epsilon(1e-14));
  // L = 50 um, b = 100 nm: kb = pi * 2e-3, well under 0.1
  CHECK(r.kb_product == doctest::Approx(kPi * 2e-3).epsilon(1e-13));
  CHECK(r.kb_pass);
  CHECK(r.density_ratio == doctest::Approx(std::pow(8e12, -1.0 / 3.0) / 100e-9).epsilon(1e-13));
  CHECK(r.density_pass);

  // smaller density only helps the density condition
  const PseudopotentialResult r2 = pseudopotential_check(p, 8e6, 100e-9);
  CHECK(r2.density_ratio > r.density_ratio);
  CHECK(r2.density_pass);

  CHECK_THROWS_AS(pseudopotential_check(p, 0.0, 1e-9), invalid_parameter);
  CHECK_THROWS_AS(pseudopotential_check(p, 1e12, 0.0), invalid_parameter);
}

TEST_CASE("feasibility report composes both checks") {
  PhysicalParams p;
  const FeasibilityReport r = feasibility_report(p, 100e-6, 1e-6, 8e12, 100e-9);
  CHECK(r.tau_c == doctest::Approx(99.0).epsilon(1e-12));
  CHECK(r.adiabatic_ratio == doctest::Approx(r.tau_c / r.tau_o).epsilon(1e-14));
  CHECK(std::isfinite(r.density_ratio));
  CHECK(r.kb_pass);
}
