#include <gravwell/sweep.hpp>

#include <gravwell/entangle.hpp>
#include <gravwell/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gravwell {

namespace {

double free_energy(int n1, int n2) {
  return 0.5 * (static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2);
}

std::vector<LevelRow> level_rows(const EigenSolution& sol, double delta) {
  std::vector<LevelRow> rows;
  rows.reserve(sol.levels.size());
  int rank = 1;
  for (const Level& lv : sol.levels) {
    LevelRow r;
    r.delta = delta;
    r.level = rank++;
    r.energy = lv.energy;
    r.sector = lv.sector;
    r.n1 = lv.n1;
    r.n2 = lv.n2;
    r.dE = lv.energy - free_energy(lv.n1, lv.n2);
    r.residual = lv.residual;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

JTable SweepContext::table(double delta, int pmax) const {
  if (tables) return tables(delta, pmax);
  return build_table(delta, pmax, accuracy, workers);
}

DistanceSweepResult distance_sweep(const PhysicalParams& p, const std::vector<double>& deltas,
                                   const SweepContext& ctx) {
  if (deltas.empty()) throw invalid_parameter("distance_sweep: empty delta list");
  if (!std::is_sorted(deltas.rbegin(), deltas.rend()))
    throw invalid_parameter("distance_sweep: deltas must be sorted descending");

  DistanceSweepResult out;
  out.rows.resize(deltas.size() * static_cast<std::size_t>(ctx.k));
  out.ground.resize(deltas.size());

  parallel_for(deltas.size(), ctx.workers, [&](std::size_t di) {
    const double delta = deltas[di];
    PhysicalParams pp = p;
    pp.separation = delta * p.well_width;
    const ScaledParams s = scale_params(pp, ctx.nmax);
    try {
      const JTable t = ctx.table(s.delta, 2 * ctx.nmax);
      SolveOptions opt;
      opt.workers = 1;  // delta points already fill the pool
      const EigenSolution sol = solve_lowest(s, t, ctx.k, opt);
      const auto rows = level_rows(sol, delta);
      std::copy(rows.begin(), rows.end(), out.rows.begin() + static_cast<std::ptrdiff_t>(di * ctx.k));
      GroundRow g;
      g.delta = delta;
      g.energy = sol.levels.front().energy;
      g.entropy = entropy(sol.levels.front().coefficients);
      g.witness = witness(sol.levels.front().coefficients, ctx.witness_dim());
      out.ground[di] = g;
    } catch (const std::exception& e) {
      throw numeric_error("distance_sweep at delta = " + std::to_string(delta) + ": " +
                          e.what());
    }
  });
  return out;
}

std::vector<LevelRow> spectrum_shift(const PhysicalParams& p, int K, const SweepContext& ctx) {
  const ScaledParams s = scale_params(p, ctx.nmax);
  const JTable t = ctx.table(s.delta, 2 * ctx.nmax);
  SolveOptions opt;
  opt.workers = ctx.workers;
  const EigenSolution sol = solve_lowest(s, t, K, opt);
  return level_rows(sol, s.delta);
}

EntropySpectrumResult entropy_spectrum(const PhysicalParams& p, int K, const SweepContext& ctx) {
  const ScaledParams s = scale_params(p, ctx.nmax);
  const JTable t = ctx.table(s.delta, 2 * ctx.nmax);
  SolveOptions opt;
  opt.workers = ctx.workers;
  const EigenSolution sol = solve_lowest(s, t, K, opt);

  EntropySpectrumResult out;
  out.rows.resize(sol.levels.size());
  parallel_for(sol.levels.size(), ctx.workers, [&](std::size_t i) {
    EntropyRow r;
    r.level = static_cast<int>(i) + 1;
    r.energy = sol.levels[i].energy;
    r.entropy = entropy(sol.levels[i].coefficients);
    r.witness = witness(sol.levels[i].coefficients, ctx.witness_dim());
    out.rows[i] = r;
  });

  std::vector<double> s_per_level(out.rows.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i) s_per_level[i] = out.rows[i].entropy;
  out.fit = fit_log(s_per_level);
  return out;
}

std::vector<GridRow> mass_width_grid(const PhysicalParams& prototype,
                                     const std::vector<double>& masses,
                                     const std::vector<double>& widths, double d,
                                     const SweepContext& ctx) {
  if (masses.empty() || widths.empty()) throw invalid_parameter("mass_width_grid: empty axes");
  if (!(d > 0.0)) throw invalid_parameter("mass_width_grid: separation must be > 0");

  std::vector<GridRow> rows(masses.size() * widths.size());
  parallel_for(rows.size(), ctx.workers, [&](std::size_t cell) {
    const std::size_t mi = cell / widths.size();
    const std::size_t wi = cell % widths.size();
    GridRow& r = rows[cell];
    r.mass = masses[mi];
    r.width = widths[wi];
    try {
      PhysicalParams pp = prototype;
      pp.mass = r.mass;
      pp.well_width = r.width;
      pp.separation = d;
      const ScaledParams s = scale_params(pp, ctx.nmax);
      r.gamma = s.gamma;
      r.delta = s.delta;
      const JTable t = ctx.table(s.delta, 2 * ctx.nmax);
      SolveOptions opt;
      opt.workers = 1;
      opt.force_iterative = ctx.grid_iterative;
      const EigenSolution sol = solve_lowest(s, t, 1, opt);
      r.entropy = entropy(sol.levels.front().coefficients);
      r.witness = witness(sol.levels.front().coefficients, ctx.witness_dim());
      r.ok = true;
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
      r.entropy = r.witness = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return rows;
}

std::vector<ConvergeRow> convergence_study(const PhysicalParams& p,
                                           const std::vector<int>& nmaxes,
                                           const SweepContext& ctx) {
  if (nmaxes.empty()) throw invalid_parameter("convergence_study: empty nmax list");
  if (!std::is_sorted(nmaxes.begin(), nmaxes.end()) ||
      std::adjacent_find(nmaxes.begin(), nmaxes.end()) != nmaxes.end())
    throw invalid_parameter("convergence_study: nmaxes must be strictly increasing");

  const int nbig = nmaxes.back();
  const ScaledParams sbig = scale_params(p, nbig);
  const JTable t = ctx.table(sbig.delta, 2 * nbig);  // reused by every smaller nmax

  std::vector<ConvergeRow> rows(nmaxes.size());
  for (std::size_t i = 0; i < nmaxes.size(); ++i) {
    const ScaledParams s = scale_params(p, nmaxes[i]);
    SolveOptions opt;
    opt.workers = ctx.workers;
    const std::vector<double> e = lowest_energies(s, t, 1, opt);
    rows[i].nmax = nmaxes[i];
    rows[i].energy = e.front();
    rows[i].rel_diff =
        i == 0 ? 0.0 : std::abs(rows[i].energy - rows[i - 1].energy) / std::abs(rows[i].energy);
  }
  return rows;
}

LogFit fit_log(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 2) throw invalid_parameter("fit_log: need at least 2 points");
  double sx = 0, sy = 0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(static_cast<double>(i + 1));
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LogFit f;
  f.b = sxy / sxx;
  f.a = my - f.b * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw invalid_parameter("spearman: bad inputs");
  auto ranks = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (i + j) + 1.0;  // average rank for ties
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sx += rx[i];
    sy += ry[i];
  }
  const double mx = sx / rx.size(), my = sy / ry.size();
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxx += (rx[i] - mx) * (rx[i] - mx);
    sxy += (rx[i] - mx) * (ry[i] - my);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace gravwell
