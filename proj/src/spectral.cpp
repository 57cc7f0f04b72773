#include <gravwell/spectral.hpp>

#include <gravwell/parallel.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace gravwell {

namespace {

struct SectorEigen {
  Sector sector = Sector::symmetric;
  std::vector<std::pair<int, int>> pairs;
  VectorXd values;   // k lowest, ascending
  MatrixXd vectors;  // dim x k (empty when only energies were requested)
  VectorXd residuals;
};

bool use_iterative(Eigen::Index dim, const SolveOptions& opt) {
  if (opt.force_dense) return false;
  if (opt.force_iterative) return true;
  return dim > opt.dense_threshold;
}

SectorEigen solve_sector(const ScaledParams& s, const JTable& t, Sector sector, int k,
                         const SolveOptions& opt, bool want_vectors) {
  SectorBlock block = assemble_sector(s, t, sector);
  const Eigen::Index dim = block.matrix.rows();
  const int kk = static_cast<int>(std::min<Eigen::Index>(k, dim));

  SectorEigen out;
  out.sector = sector;
  out.pairs = std::move(block.basis_pairs);

  if (use_iterative(dim, opt)) {
    detail::LanczosResult r = detail::lanczos_lowest(block.matrix, kk, opt.iterative_tol);
    out.values = r.values;
    out.vectors = std::move(r.vectors);
  } else if (want_vectors) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(block.matrix);
    if (es.info() != Eigen::Success)
      throw numeric_error(std::string("dense eigensolver failed in sector ") +
                          to_string(sector));
    out.values = es.eigenvalues().head(kk);
    out.vectors = es.eigenvectors().leftCols(kk);
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(block.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numeric_error(std::string("dense eigensolver failed in sector ") +
                          to_string(sector));
    out.values = es.eigenvalues().head(kk);
  }

  if (out.vectors.size() > 0) {
    MatrixXd r = block.matrix * out.vectors - out.vectors * out.values.asDiagonal();
    out.residuals = r.colwise().norm();
  } else {
    out.residuals = VectorXd::Zero(kk);
  }
  return out;
}

// nmax x nmax coefficient matrix from a sector-basis vector, global sign fixed
// so the largest-magnitude entry (first in row-major scan on ties) is positive.
MatrixXd reconstruct(const std::vector<std::pair<int, int>>& pairs,
                     const Eigen::Ref<const VectorXd>& c, int nmax, Sector sector) {
  MatrixXd a = MatrixXd::Zero(nmax, nmax);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto [i, j] = pairs[idx];
    if (i == j) {
      a(i - 1, i - 1) = c(static_cast<Eigen::Index>(idx));
    } else {
      const double v = c(static_cast<Eigen::Index>(idx)) * inv_sqrt2;
      a(i - 1, j - 1) = v;
      a(j - 1, i - 1) = sector == Sector::symmetric ? v : -v;
    }
  }
  double best = 0.0;
  int sign = 1;
  for (int r = 0; r < nmax; ++r)
    for (int col = 0; col < nmax; ++col)
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        sign = a(r, col) >= 0.0 ? 1 : -1;
      }
  if (sign < 0) a = -a;
  return a;
}

struct Candidate {
  double energy;
  Sector sector;
  int rank;
};

// Strict sort by energy, then a cluster pass that puts the symmetric member
// first within near-exact ties (the free spectrum at gamma = 0).
std::vector<Candidate> merge_sorted(std::vector<Candidate> c) {
  std::sort(c.begin(), c.end(), [](const Candidate& x, const Candidate& y) {
    if (x.energy != y.energy) return x.energy < y.energy;
    if (x.sector != y.sector) return x.sector == Sector::symmetric;
    return x.rank < y.rank;
  });
  std::size_t i = 0;
  while (i < c.size()) {
    const double eps = 1e-9 * std::max(1.0, std::abs(c[i].energy));
    std::size_t j = i + 1;
    while (j < c.size() && c[j].energy - c[i].energy <= eps) ++j;
    std::sort(c.begin() + i, c.begin() + j, [](const Candidate& x, const Candidate& y) {
      if (x.sector != y.sector) return x.sector == Sector::symmetric;
      return x.rank < y.rank;
    });
    i = j;
  }
  return c;
}

}  // namespace

std::vector<std::pair<int, int>> sector_basis(int nmax, Sector sector) {
  if (nmax < 2) throw invalid_parameter("nmax must be >= 2");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(nmax) * (nmax + 1) / 2);
  for (int i = 1; i <= nmax; ++i)
    for (int j = (sector == Sector::symmetric ? i : i + 1); j <= nmax; ++j)
      pairs.emplace_back(i, j);
  return pairs;
}

std::vector<std::pair<int, int>> free_labels(int nmax, Sector sector) {
  auto pairs = sector_basis(nmax, sector);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                     const long ea = static_cast<long>(a.first) * a.first +
                                     static_cast<long>(a.second) * a.second;
                     const long eb = static_cast<long>(b.first) * b.first +
                                     static_cast<long>(b.second) * b.second;
                     if (ea != eb) return ea < eb;
                     return a.first < b.first;
                   });
  return pairs;
}

SectorBlock assemble_sector(const ScaledParams& s, const JTable& t, Sector sector) {
  s.validate();
  // Cache files key delta at 12 decimals, so equality is checked at the same
  // granularity.
  if (std::abs(t.delta - s.delta) > 1e-12)
    throw config_error("assemble_sector: table delta does not match params");
  if (t.pmax < 2 * s.nmax)
    throw config_error("assemble_sector: table pmax must be >= 2*nmax");

  SectorBlock block;
  block.sector = sector;
  block.nmax = s.nmax;
  block.basis_pairs = sector_basis(s.nmax, sector);
  const auto& pairs = block.basis_pairs;
  const Eigen::Index dim = static_cast<Eigen::Index>(pairs.size());
  block.matrix.resize(dim, dim);

  const double gamma = s.gamma;
  const double sqrt2 = std::numbers::sqrt2;
  auto elem = [&](int i, int j, int k, int l) {
    return interaction_element(i, j, k, l, t, gamma);
  };

  MatrixXd& m = block.matrix;
  parallel_for(static_cast<std::size_t>(dim), 0, [&](std::size_t a) {
    const auto [i, j] = pairs[a];
    for (Eigen::Index b = static_cast<Eigen::Index>(a); b < dim; ++b) {
      const auto [k, l] = pairs[static_cast<std::size_t>(b)];
      double v;
      if (sector == Sector::symmetric) {
        if (i == j && k == l)
          v = elem(i, i, k, k);
        else if (i == j)
          v = sqrt2 * elem(i, i, k, l);
        else if (k == l)
          v = sqrt2 * elem(i, j, k, k);
        else
          v = elem(i, j, k, l) + elem(i, j, l, k);
      } else {
        v = elem(i, j, k, l) - elem(i, j, l, k);
      }
      if (static_cast<Eigen::Index>(a) == b) v += 0.5 * (i * i + j * j);
      m(static_cast<Eigen::Index>(a), b) = v;
      m(b, static_cast<Eigen::Index>(a)) = v;
    }
  });
  return block;
}

EigenSolution solve_lowest(const ScaledParams& s, const JTable& t, int k,
                           const SolveOptions& opt) {
  s.validate();
  const Eigen::Index dim_s = static_cast<Eigen::Index>(s.nmax) * (s.nmax + 1) / 2;
  const Eigen::Index dim_a = static_cast<Eigen::Index>(s.nmax) * (s.nmax - 1) / 2;
  if (k < 1 || k > dim_s + dim_a)
    throw invalid_parameter("solve_lowest: k must be in [1, total dimension]");

  std::array<SectorEigen, 2> sec;
  const std::array<Sector, 2> which{Sector::symmetric, Sector::antisymmetric};
  parallel_for(2, std::min(opt.workers == 0 ? 2 : opt.workers, 2), [&](std::size_t i) {
    sec[i] = solve_sector(s, t, which[i], k, opt, /*want_vectors=*/true);
  });

  std::vector<Candidate> cand;
  for (const auto& se : sec)
    for (Eigen::Index r = 0; r < se.values.size(); ++r)
      cand.push_back({se.values(r), se.sector, static_cast<int>(r)});
  cand = merge_sorted(std::move(cand));

  EigenSolution sol;
  sol.scaled = s;
  sol.levels.reserve(k);
  for (int n = 0; n < k; ++n) {
    const Candidate& c = cand[static_cast<std::size_t>(n)];
    const SectorEigen& se = sec[c.sector == Sector::symmetric ? 0 : 1];
    Level lv;
    lv.energy = c.energy;
    lv.sector = c.sector;
    lv.sector_rank = c.rank;
    lv.residual = se.residuals(c.rank);
    lv.coefficients = reconstruct(se.pairs, se.vectors.col(c.rank), s.nmax, c.sector);
    sol.levels.push_back(std::move(lv));
  }
  return label_levels(sol);
}

std::vector<double> lowest_energies(const ScaledParams& s, const JTable& t, int k,
                                    const SolveOptions& opt) {
  s.validate();
  const Eigen::Index dim_s = static_cast<Eigen::Index>(s.nmax) * (s.nmax + 1) / 2;
  const Eigen::Index dim_a = static_cast<Eigen::Index>(s.nmax) * (s.nmax - 1) / 2;
  if (k < 1 || k > dim_s + dim_a)
    throw invalid_parameter("lowest_energies: k must be in [1, total dimension]");

  std::array<SectorEigen, 2> sec;
  const std::array<Sector, 2> which{Sector::symmetric, Sector::antisymmetric};
  parallel_for(2, std::min(opt.workers == 0 ? 2 : opt.workers, 2), [&](std::size_t i) {
    sec[i] = solve_sector(s, t, which[i], k, opt, /*want_vectors=*/false);
  });

  std::vector<Candidate> cand;
  for (const auto& se : sec)
    for (Eigen::Index r = 0; r < se.values.size(); ++r)
      cand.push_back({se.values(r), se.sector, static_cast<int>(r)});
  cand = merge_sorted(std::move(cand));

  std::vector<double> e(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n) e[static_cast<std::size_t>(n)] = cand[static_cast<std::size_t>(n)].energy;
  return e;
}

EigenSolution& label_levels(EigenSolution& sol) {
  const auto sym = free_labels(sol.scaled.nmax, Sector::symmetric);
  const auto anti = free_labels(sol.scaled.nmax, Sector::antisymmetric);
  for (Level& lv : sol.levels) {
    const auto& list = lv.sector == Sector::symmetric ? sym : anti;
    if (lv.sector_rank < 0 || static_cast<std::size_t>(lv.sector_rank) >= list.size())
      throw numeric_error("label_levels: no free label for sector " +
                          std::string(to_string(lv.sector)) + " rank " +
                          std::to_string(lv.sector_rank));
    lv.n1 = list[static_cast<std::size_t>(lv.sector_rank)].first;
    lv.n2 = list[static_cast<std::size_t>(lv.sector_rank)].second;
  }
  return sol;
}

namespace detail {

LanczosResult lanczos_lowest(const MatrixXd& a, int k, double tol) {
  const Eigen::Index n = a.rows();
  if (k < 1 || k > n) throw invalid_parameter("lanczos_lowest: bad k");

  // Small problems go straight to the dense solver.
  if (n <= std::max<Eigen::Index>(4 * k + 60, 200)) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw numeric_error("dense eigensolver failed");
    return {es.eigenvalues().head(k), es.eigenvectors().leftCols(k)};
  }

  // Deterministic generic start vector.
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  auto next_unit = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
  };
  auto fresh_vector = [&](const MatrixXd& v, Eigen::Index cols) {
    VectorXd w(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (Eigen::Index i = 0; i < n; ++i) w(i) = next_unit();
      if (cols > 0) w -= v.leftCols(cols) * (v.leftCols(cols).transpose() * w);
      const double nrm = w.norm();
      if (nrm > 1e-8) return VectorXd(w / nrm);
    }
    throw numeric_error("lanczos_lowest: could not generate a fresh start vector");
  };

  const int m_cap = static_cast<int>(std::min<Eigen::Index>(n, 1200));
  int m = std::min<int>(m_cap, std::max(4 * k + 60, 120));

  MatrixXd v(n, m + 1);
  std::vector<double> alpha, beta;  // T coefficients; beta[j] links v_j, v_{j+1}
  v.col(0) = fresh_vector(v, 0);

  int j = 0;
  for (;;) {
    for (; j < m; ++j) {
      VectorXd w = a * v.col(j);
      if (j > 0 && beta[static_cast<std::size_t>(j - 1)] != 0.0)
        w -= beta[static_cast<std::size_t>(j - 1)] * v.col(j - 1);
      const double aj = v.col(j).dot(w);
      alpha.push_back(aj);
      w -= aj * v.col(j);
      // full reorthogonalization, twice
      w -= v.leftCols(j + 1) * (v.leftCols(j + 1).transpose() * w);
      w -= v.leftCols(j + 1) * (v.leftCols(j + 1).transpose() * w);
      double bj = w.norm();
      if (bj < 1e-12) {
        // invariant subspace hit; continue in a fresh direction
        v.col(j + 1) = fresh_vector(v, j + 1);
        beta.push_back(0.0);
      } else {
        v.col(j + 1) = w / bj;
        beta.push_back(bj);
      }
    }

    // Ritz pairs of the tridiagonal T_m.
    MatrixXd tm = MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tm(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) tm(i, i + 1) = tm(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(tm);
    if (es.info() != Eigen::Success) throw numeric_error("lanczos_lowest: T eigensolve failed");

    const double bm = beta[static_cast<std::size_t>(m - 1)];
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      const double res = std::abs(bm * es.eigenvectors()(m - 1, i));
      if (res > tol * std::max(1.0, std::abs(es.eigenvalues()(i)))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      LanczosResult r;
      r.values = es.eigenvalues().head(k);
      r.vectors = v.leftCols(m) * es.eigenvectors().leftCols(k);
      return r;
    }
    if (m >= m_cap)
      throw numeric_error("lanczos_lowest: no convergence at Krylov dimension " +
                          std::to_string(m) + " (tol " + std::to_string(tol) + ")");
    const int grow = std::min(m_cap, m + std::max(80, 2 * k));
    MatrixXd v2(n, grow + 1);
    v2.leftCols(m + 1) = v.leftCols(m + 1);
    v = std::move(v2);
    m = grow;
  }
}

}  // namespace detail

}  // namespace gravwell
