#include <gravwell/decohere.hpp>

#include <gravwell/basis.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace gravwell {

namespace {

using Cplx = std::complex<double>;

double spectral_norm(const MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return std::max(std::abs(es.eigenvalues()(0)),
                  std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
}

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
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
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace

BathParams scale_decoherence(const PhysicalParams& p, const ScaledParams& s) {
  p.validate();
  s.validate();
  const double l2 = p.well_width * p.well_width;
  BathParams b;
  b.kappa1 = p.mass * p.damping * p.cutoff * l2 / s.energy_unit;
  b.kappa2 = 2.0 * p.mass * p.damping * p.constants.kB * p.temperature * l2 /
             (p.constants.hbar * s.energy_unit);
  return b;
}

PositionOperators position_matrices(int n_d) {
  if (n_d < 2) throw invalid_parameter("position_matrices requires n_d >= 2");
  return {position_matrix(n_d), position_sq_matrix(n_d)};
}

MatrixXd product_hamiltonian(const ScaledParams& s, const JTable* t, int n_d,
                             bool include_interaction) {
  if (n_d < 2) throw invalid_parameter("product_hamiltonian requires n_d >= 2");
  const int dim = n_d * n_d;
  MatrixXd h = MatrixXd::Zero(dim, dim);
  for (int i = 1; i <= n_d; ++i)
    for (int j = 1; j <= n_d; ++j)
      h((i - 1) * n_d + (j - 1), (i - 1) * n_d + (j - 1)) = 0.5 * (i * i + j * j);
  if (include_interaction) {
    if (t == nullptr) throw invalid_parameter("product_hamiltonian: interaction needs a J-table");
    if (t->pmax < 2 * n_d)
      throw config_error("product_hamiltonian: table pmax must be >= 2*n_d");
    for (int a = 0; a < dim; ++a) {
      const int i = a / n_d + 1, j = a % n_d + 1;
      for (int b = a; b < dim; ++b) {
        const int k = b / n_d + 1, l = b % n_d + 1;
        const double v = interaction_element(i, j, k, l, *t, s.gamma);
        h(a, b) += v;
        if (b != a) h(b, a) += v;
      }
    }
  }
  return h;
}

MatrixXcd product_state_density(int n1, int n2, int n_d) {
  if (n1 < 1 || n2 < 1 || n1 > n_d || n2 > n_d)
    throw invalid_parameter("product_state_density: levels out of range");
  const int dim = n_d * n_d;
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  rho((n1 - 1) * n_d + (n2 - 1), (n1 - 1) * n_d + (n2 - 1)) = 1.0;
  return rho;
}

Trajectory evolve(const MatrixXcd& rho0, const MatrixXd& h, const BathParams& b, double dt,
                  int steps, const EvolveOptions& opt) {
  const Eigen::Index dim = rho0.rows();
  if (dim == 0 || rho0.cols() != dim) throw invalid_parameter("evolve: rho0 must be square");
  const int n_d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (static_cast<Eigen::Index>(n_d) * n_d != dim)
    throw invalid_parameter("evolve: rho dimension must be n_d^2");
  if (h.rows() != dim || h.cols() != dim)
    throw invalid_parameter("evolve: Hamiltonian block does not match rho");
  if (!(dt > 0.0) || steps < 1) throw invalid_parameter("evolve: need dt > 0, steps >= 1");
  if (b.kappa1 < 0.0 || b.kappa2 < 0.0) throw invalid_parameter("evolve: negative bath rate");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-9 || std::abs(rho0.trace().imag()) > 1e-12)
    throw invalid_parameter("evolve: rho0 must have unit trace");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw invalid_parameter("evolve: rho0 must be Hermitian");

  // stability guard
  const double hnorm = spectral_norm(h);
  const double speed = std::max({hnorm, b.kappa1, b.kappa2 * n_d * n_d});
  if (dt * speed > 0.1 + 1e-12)
    throw invalid_parameter("evolve: dt too large for stability (dt*max(|h|,k1,k2*n_d^2) = " +
                            std::to_string(dt * speed) + " > 0.1)");

  const PositionOperators ops = position_matrices(n_d);
  const MatrixXd eye = MatrixXd::Identity(n_d, n_d);
  const MatrixXcd u1 = Eigen::kroneckerProduct(ops.u, eye).eval().cast<Cplx>();
  const MatrixXcd u2 = Eigen::kroneckerProduct(eye, ops.u).eval().cast<Cplx>();
  const MatrixXcd w = (Eigen::kroneckerProduct(ops.u_sq, eye).eval() +
                       Eigen::kroneckerProduct(eye, ops.u_sq).eval())
                          .cast<Cplx>();
  const MatrixXcd hc = h.cast<Cplx>();
  const Cplx mi(0.0, -1.0);
  const Cplx pi1(0.0, b.kappa1);

  auto generator = [&](const MatrixXcd& r) -> MatrixXcd {
    MatrixXcd out = mi * (hc * r - r * hc);
    if (b.kappa1 != 0.0) out += pi1 * (w * r - r * w);
    if (b.kappa2 != 0.0) {
      const MatrixXcd c1 = u1 * r - r * u1;
      const MatrixXcd c2 = u2 * r - r * u2;
      out -= b.kappa2 * ((u1 * c1 - c1 * u1) + (u2 * c2 - c2 * u2));
    }
    return out;
  };

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps / std::max(1, opt.sample_stride)) + 2);
  MatrixXcd rho = rho0;

  auto record = [&](int step) {
    TrajectorySample s;
    s.time = step * dt;
    s.purity = rho.squaredNorm();  // tr(rho^2) for Hermitian rho
    s.trace_err = std::abs(rho.trace() - Cplx(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    s.min_eig = es.eigenvalues()(0);
    if (s.min_eig < -1e-8) traj.positivity_flag = true;
    traj.samples.push_back(s);
    if (s.trace_err > opt.trace_tol)
      throw numeric_error("evolve: trace drift " + std::to_string(s.trace_err) +
                          " exceeds tolerance; reduce dt");
    if (s.purity > 1.0 + 1e-9)
      throw numeric_error("evolve: purity exceeded 1; reduce dt");
  };

  record(0);
  for (int step = 1; step <= steps; ++step) {
    const MatrixXcd k1 = generator(rho);
    const MatrixXcd k2 = generator(rho + (0.5 * dt) * k1);
    const MatrixXcd k3 = generator(rho + (0.5 * dt) * k2);
    const MatrixXcd k4 = generator(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    traj.max_herm_drift = std::max(traj.max_herm_drift, drift);
    rho = (0.5 * (rho + rho.adjoint())).eval();
    if (step % std::max(1, opt.sample_stride) == 0 || step == steps) record(step);
  }
  traj.rho_final = std::move(rho);
  return traj;
}

DecoherenceFit decoherence_time(std::span<const double> time, std::span<const double> purity) {
  if (time.size() != purity.size()) throw invalid_parameter("decoherence_time: size mismatch");
  const std::size_t n = time.size();
  if (n < 50) throw invalid_parameter("decoherence_time: need at least 50 samples");

  DecoherenceFit fit;
  if (purity.back() > 0.99 * purity.front()) {
    fit.tau_d = std::numeric_limits<double>::infinity();
    fit.decohered = false;
    return fit;
  }

  const std::size_t skip = std::max<std::size_t>(1, n / 20);
  const double p_ref = purity[skip];
  std::size_t end = n;
  for (std::size_t i = skip; i < n; ++i)
    if (purity[i] <= p_ref / std::numbers::e) {
      end = i + 1;
      break;
    }
  if (end - skip < 10) end = std::min(n, skip + 10);

  std::vector<double> lt(time.begin() + static_cast<std::ptrdiff_t>(skip),
                         time.begin() + static_cast<std::ptrdiff_t>(end));
  std::vector<double> lp(end - skip);
  for (std::size_t i = skip; i < end; ++i) {
    if (!(purity[i] > 0.0)) throw numeric_error("decoherence_time: non-positive purity sample");
    lp[i - skip] = std::log(purity[i]);
  }
  const LinearFit lf = fit_line(lt, lp);
  if (!(lf.slope < 0.0)) {
    fit.tau_d = std::numeric_limits<double>::infinity();
    fit.decohered = false;
    return fit;
  }
  fit.tau_d = -1.0 / lf.slope;
  fit.r_squared = lf.r_squared;
  fit.decohered = true;
  fit.window_begin = skip;
  fit.window_end = end;
  return fit;
}

DecoherenceFit decoherence_time(const Trajectory& traj) {
  std::vector<double> t, p;
  t.reserve(traj.samples.size());
  p.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    t.push_back(s.time);
    p.push_back(s.purity);
  }
  return decoherence_time(t, p);
}

}  // namespace gravwell
