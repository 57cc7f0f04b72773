#pragma once

#include <gravwell/quadrature.hpp>
#include <gravwell/types.hpp>
#include <gravwell/units.hpp>

#include <utility>
#include <vector>

namespace gravwell {

enum class Sector { symmetric, antisymmetric };

inline const char* to_string(Sector s) {
  return s == Sector::symmetric ? "sym" : "antisym";
}

/// Ordered (i,j) pairs spanning one exchange sector: i <= j for the symmetric
/// sector, i < j for the antisymmetric one, lexicographic.
std::vector<std::pair<int, int>> sector_basis(int nmax, Sector sector);

/// The same pairs ordered by free energy (i^2+j^2)/2, ties by i. Rank r of an
/// interacting level maps to entry r here.
std::vector<std::pair<int, int>> free_labels(int nmax, Sector sector);

/// One exchange-symmetry block of the dimensionless Hamiltonian in the basis
/// (|ij> + |ji>)/sqrt(2) (i<j), |ii> for the symmetric sector and
/// (|ij> - |ji>)/sqrt(2) for the antisymmetric one. Kinetic part (i^2+j^2)/2
/// on the diagonal, interaction from the J-table.
struct SectorBlock {
  Sector sector = Sector::symmetric;
  int nmax = 0;
  std::vector<std::pair<int, int>> basis_pairs;
  MatrixXd matrix;  // dense symmetric, E0 units
};

SectorBlock assemble_sector(const ScaledParams& s, const JTable& t, Sector sector);

struct Level {
  double energy = 0.0;     // E0 units
  MatrixXd coefficients;   // nmax x nmax, unit Frobenius norm, a = +-a^T per sector
  Sector sector = Sector::symmetric;
  int sector_rank = 0;     // 0-based rank within its sector
  int n1 = 0, n2 = 0;      // free-spectrum label, n1 <= n2
  double residual = 0.0;   // ||H vec(a) - E vec(a)||
};

struct EigenSolution {
  ScaledParams scaled;
  std::vector<Level> levels;  // nondecreasing energy
};

struct SolveOptions {
  int dense_threshold = 6000;  // dense eigensolver up to this sector dimension
  bool force_dense = false;
  bool force_iterative = false;
  double iterative_tol = 1e-10;  // Ritz residual target, relative to max(1,|E|)
  int workers = 0;               // sectors solve in parallel
};

/// Lowest-k eigenpairs of both sectors merged sorted by energy. Near-exact
/// ties (the free spectrum at gamma = 0) order the symmetric member first.
/// The coefficient sign is fixed so the largest-magnitude entry is positive.
EigenSolution solve_lowest(const ScaledParams& s, const JTable& t, int k,
                           const SolveOptions& opt = {});

/// Energies only (no eigenvectors); same selection and ordering rules.
std::vector<double> lowest_energies(const ScaledParams& s, const JTable& t, int k,
                                    const SolveOptions& opt = {});

/// Reassigns free-spectrum labels: within each sector the r-th interacting
/// level gets the r-th non-interacting label. Levels must be sorted by energy.
EigenSolution& label_levels(EigenSolution& sol);

namespace detail {

/// Lanczos with full reorthogonalization for the lowest k eigenpairs of a
/// dense symmetric matrix. Deterministic start vector; the Krylov space grows
/// until every requested Ritz pair has residual <= tol * max(1, |theta|).
/// The dense path is its accuracy oracle in the test suite.
struct LanczosResult {
  VectorXd values;
  MatrixXd vectors;
};
LanczosResult lanczos_lowest(const MatrixXd& a, int k, double tol);

}  // namespace detail

}  // namespace gravwell
