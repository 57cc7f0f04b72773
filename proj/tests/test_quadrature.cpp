#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gravwell/quadrature.hpp>

#include "support/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

using namespace gravwell;

TEST_CASE("closed form J(0,0;delta)") {
  // f(2+d) - 2 f(1+d) + f(d), f(s) = s ln s, evaluated inline
  const auto f = [](double s) { return s * std::log(s); };
  CHECK(j00_closed_form(1.0) ==
        doctest::Approx(3.0 * std::log(3.0) - 4.0 * std::log(2.0)).epsilon(1e-15));
  for (double d : {0.02, 0.1, 1.0, 2.0}) {
    const double ref = f(2.0 + d) - 2.0 * f(1.0 + d) + f(d);
    CHECK(j_entry(0, 0, d) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(j_entry(0, 0, 1.0) == doctest::Approx(0.52325).epsilon(1e-4));
  CHECK(j_entry(0, 0, 0.02) == doctest::Approx(1.3016191532617).epsilon(1e-12));
}

TEST_CASE("j_entry symmetry and input validation") {
  for (double d : {0.05, 0.7}) {
    CHECK(j_entry(3, 7, d) == doctest::Approx(j_entry(7, 3, d)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(j_entry(0, 0, 0.0), invalid_parameter);
  CHECK_THROWS_AS(j_entry(0, 0, -0.1), invalid_parameter);
  CHECK_THROWS_AS(j_entry(-1, 0, 0.1), invalid_parameter);
  CHECK_THROWS_AS(j_entry(0, 0, 0.1, 1e-5), invalid_parameter);  // accuracy > 1e-6
}

TEST_CASE("j_entry against the independent adaptive oracle") {
  std::mt19937 rng(123);
  std::uniform_int_distribution<int> up(0, 12);
  for (double d : {0.02, 1.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const int p = up(rng), q = up(rng);
      const double ref = oracle::brute_j(p, q, d);
      CHECK(j_entry(p, q, d) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("build_table matches j_entry and is bit-symmetric") {
  const JTable t = build_table(0.02, 12);
  CHECK(t.values(0, 0) == doctest::Approx(j00_closed_form(0.02)).epsilon(1e-12));
  for (int p = 0; p <= 12; ++p)
    for (int q = p; q <= 12; ++q) {
      CHECK(t.values(p, q) == t.values(q, p));  // mirrored, bit-exact
    }
  // spot agreement with the standalone entry evaluator
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> up(0, 12);
  for (int trial = 0; trial < 8; ++trial) {
    const int p = up(rng), q = up(rng);
    const double tol = 1e-10 * std::max(std::abs(t.values(p, q)), 1e-3 * t.values(0, 0));
    CHECK(std::abs(t.values(p, q) - j_entry(p, q, 0.02)) <= 2.0 * tol);
  }
}

TEST_CASE("table invariants: positivity, bound, Riemann-Lebesgue trend") {
  for (double d : {0.02, 0.5}) {
    const JTable t = build_table(d, 40);
    CHECK(t.values(0, 0) > 0.0);
    CHECK(t.values.cwiseAbs().maxCoeff() == doctest::Approx(t.values(0, 0)));
    for (int p = 0; p <= 40; ++p)
      for (int q = 0; q <= 40; ++q) CHECK(std::abs(t.values(p, q)) <= t.values(0, 0) + 1e-15);
    for (int p = 4; p <= 40; ++p)
      CHECK(std::abs(t.values(p, 0)) < std::abs(t.values(p - 4, 0)));
  }
}

TEST_CASE("build_table determinism across worker counts") {
  const JTable a = build_table(0.07, 16, 1e-10, 1);
  const JTable b = build_table(0.07, 16, 1e-10, 4);
  const JTable c = build_table(0.07, 16, 1e-10, 1);
  CHECK((a.values.array() == b.values.array()).all());
  CHECK((a.values.array() == c.values.array()).all());
}

TEST_CASE("interaction elements: formula, symmetry, brute-force oracle") {
  const double d = 0.02, gamma = 1.7;
  const JTable t = build_table(d, 16);

  // <11|V|11> = -gamma [J(0,0) - 2 J(0,2) + J(2,2)]
  const double ref = -gamma * (t.at(0, 0) - 2.0 * t.at(0, 2) + t.at(2, 2));
  CHECK(interaction_element(1, 1, 1, 1, t, gamma) == doctest::Approx(ref).epsilon(1e-14));

  CHECK(interaction_element(2, 5, 3, 1, t, 0.0) == 0.0);

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> ui(1, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const int i = ui(rng), j = ui(rng), k = ui(rng), l = ui(rng);
    const double got = interaction_element(i, j, k, l, t, gamma);
    const double want = oracle::brute_element(i, j, k, l, d, gamma);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
    // particle exchange and matrix symmetry, exact through the mirrored table
    CHECK(got == interaction_element(j, i, l, k, t, gamma));
    CHECK(got == interaction_element(k, l, i, j, t, gamma));
  }

  CHECK_THROWS_AS(interaction_element(0, 1, 1, 1, t, gamma), invalid_parameter);
  CHECK_THROWS_AS(interaction_element(8, 1, 9, 1, t, gamma), std::out_of_range);
}

TEST_CASE("cache file roundtrip and corruption handling") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gravwell_quad_test";
  fs::create_directories(dir);
  const fs::path file = dir / "table.bin";

  const JTable t = build_table(0.25, 10);
  save_table(t, file);
  const JTable u = load_table(file);
  CHECK(u.delta == t.delta);
  CHECK(u.pmax == t.pmax);
  CHECK(u.accuracy == t.accuracy);
  CHECK(u.version == t.version);
  CHECK((u.values.array() == t.values.array()).all());

  // header damage
  {
    std::FILE* f = std::fopen(file.string().c_str(), "r+b");
    REQUIRE(f != nullptr);
    std::fputs("BAD!", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_table(file), config_error);

  // truncation
  save_table(t, file);
  fs::resize_file(file, fs::file_size(file) - 9);
  CHECK_THROWS_AS(load_table(file), config_error);
  fs::remove_all(dir);
}

TEST_CASE("rebuild reproduces identical bytes") {
  const JTable a = build_table(0.02, 8);
  const JTable b = build_table(0.02, 8);
  CHECK((a.values.array() == b.values.array()).all());
}

TEST_CASE("evaluation counter moves on build") {
  reset_quadrature_eval_count();
  CHECK(quadrature_eval_count() == 0);
  build_table(0.3, 4);
  CHECK(quadrature_eval_count() > 0);
}
