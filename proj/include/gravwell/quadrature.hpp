#pragma once

#include <gravwell/types.hpp>

#include <cstdint>
#include <filesystem>

namespace gravwell {

/// Precomputed two-dimensional cosine integrals
///
///   J(p,q; delta) = int_0^1 int_0^1 cos(p pi u1) cos(q pi u2) / (u1 + u2 + delta) du1 du2
///
/// from which every gravitational matrix element is assembled. Symmetric in
/// (p,q); only the upper triangle is computed, the lower is mirrored, so
/// values(p,q) == values(q,p) holds bit-exactly.
struct JTable {
  double delta = 0.0;
  int pmax = 0;           // table covers 0..pmax per index; 2*nmax for a basis of nmax
  double accuracy = 0.0;  // target error relative to the J(0,0) scale
  int version = 0;        // cache format tag
  MatrixXd values;        // (pmax+1) x (pmax+1)

  double at(int p, int q) const {
    if (p < 0 || q < 0 || p > pmax || q > pmax)
      throw std::out_of_range("JTable::at: index outside table range");
    return values(p, q);
  }
};

/// Closed form J(0,0;delta) = f(2+d) - 2 f(1+d) + f(d), f(s) = s ln s.
/// Doubles as the magnitude scale for table error control: |J(p,q)| <= J(0,0).
double j00_closed_form(double delta);

/// One table entry to relative accuracy (default 1e-10), by composite
/// Gauss-Legendre panels sized to the oscillation (>= 8 nodes per half-period
/// of the fastest cosine) and graded geometrically toward the u1 = u2 = 0
/// corner, refined adaptively until two refinement levels agree.
double j_entry(int p, int q, double delta, double accuracy = 1e-10);

/// Fills the (pmax+1)^2 symmetric table. Every entry agrees with j_entry to
/// the stated accuracy; identical arguments reproduce identical bytes for any
/// worker count.
JTable build_table(double delta, int pmax, double accuracy = 1e-10, int workers = 0);

/// <i j| V |k l> = -gamma [ J(|i-k|,|j-l|) - J(i+k,|j-l|) - J(|i-k|,j+l) + J(i+k,j+l) ]
/// in E0 units, levels 1-based. Requires t.pmax >= i+k and >= j+l.
double interaction_element(int i, int j, int k, int l, const JTable& t, double gamma);

/// Cache file layout: one text header line
///   GWJT <version> <delta %.12f> <pmax> <accuracy %.17g>
/// followed by the upper triangle (row-major, p <= q) as little-endian
/// 64-bit floats.
void save_table(const JTable& t, const std::filesystem::path& file);
JTable load_table(const std::filesystem::path& file);  // throws config_error if malformed

/// Number of kernel evaluations performed by j_entry/build_table since the
/// last reset. Lets callers verify that cache hits skip quadrature entirely.
std::uint64_t quadrature_eval_count();
void reset_quadrature_eval_count();

namespace detail {

struct Grid1D {
  VectorXd x;  // nodes in (0,1)
  VectorXd w;
};

/// Composite panels on [0,1]: width at most one period of cos(freq pi u) with
/// 16 Gauss-Legendre nodes each, plus a geometric layer toward u = 0 whose
/// innermost panel is min(delta, uniform width)/2. `level` halves every panel
/// width that many times.
Grid1D make_cos_grid(int freq, double delta, int level);

}  // namespace detail

}  // namespace gravwell
