#pragma once

#include <gravwell/basis.hpp>
#include <gravwell/types.hpp>

#include <Eigen/SVD>

#include <cmath>

namespace gravwell {

namespace detail {

template <typename Derived>
void require_normalized(const Eigen::MatrixBase<Derived>& a) {
  const double n = a.norm();
  if (std::abs(n - 1.0) > 1e-8)
    throw invalid_parameter("coefficient matrix is not normalized (|a|_F = " +
                            std::to_string(n) + "); no silent rescale");
}

}  // namespace detail

/// Schmidt coefficients of the pure two-particle state a_ij: the singular
/// values of a, nonincreasing. Values below 1e-14 are clamped to zero.
template <typename Derived>
VectorXd schmidt_coefficients(const Eigen::MatrixBase<Derived>& a) {
  detail::require_normalized(a);
  Eigen::BDCSVD<MatrixXd> svd(a.derived());
  VectorXd s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < 1e-14) s(i) = 0.0;
  return s;
}

/// Von Neumann entropy of either reduced state, S = -sum sigma^2 ln sigma^2,
/// in nats, with 0 ln 0 := 0. Computed from singular values of a rather than
/// by diagonalizing a a^T: better conditioned for tiny Schmidt coefficients.
template <typename Derived>
double entropy(const Eigen::MatrixBase<Derived>& a) {
  const VectorXd s = schmidt_coefficients(a);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double p = s(i) * s(i);
    if (p > 0.0) sum -= p * std::log(p);
  }
  return sum;
}

/// Fidelity-witness expectation <psi| I/n - |Phi+><Phi+| |psi> over the first
/// n_w modes: 1/n_w - |sum_{i<=n_w} a_ii|^2 / n_w. Negative certifies
/// entanglement; separable states give values >= 0.
template <typename Derived>
double witness(const Eigen::MatrixBase<Derived>& a, int n_w) {
  if (n_w < 1) throw invalid_parameter("witness: n_w must be >= 1");
  if (n_w > a.rows() || n_w > a.cols())
    throw invalid_parameter("witness: n_w exceeds the coefficient matrix dimension");
  detail::require_normalized(a);
  const double tr = a.derived().topLeftCorner(n_w, n_w).trace();
  return 1.0 / n_w - tr * tr / n_w;
}

/// P_n = sum_j |a_nj|^2, the diagonal of the reduced density matrix of
/// particle A.
template <typename Derived>
VectorXd mode_probabilities(const Eigen::MatrixBase<Derived>& a) {
  detail::require_normalized(a);
  return a.derived().rowwise().squaredNorm();
}

struct PositionObservables {
  double mean_u1 = 0.0;
  double mean_u2 = 0.0;
  double corr_u1u2 = 0.0;    // <u1 u2>
  double covariance = 0.0;   // <u1 u2> - <u1><u2>
};

/// Single- and two-particle position moments from the analytic sine-basis
/// position matrix: <u1> = tr(U a a^T), <u2> = tr(U a^T a),
/// <u1 u2> = tr(a^T U a U).
template <typename Derived>
PositionObservables position_observables(const Eigen::MatrixBase<Derived>& a) {
  detail::require_normalized(a);
  const MatrixXd u = position_matrix(static_cast<int>(a.rows()));
  const MatrixXd ua = u * a.derived();
  PositionObservables r;
  r.mean_u1 = (a.derived().transpose() * ua).trace();
  r.mean_u2 = (a.derived() * u).cwiseProduct(a.derived()).sum();
  r.corr_u1u2 = (ua * u).cwiseProduct(a.derived()).sum();
  r.covariance = r.corr_u1u2 - r.mean_u1 * r.mean_u2;
  return r;
}

/// psi(u1,u2) = sum_ij a_ij 2 sin(i pi u1) sin(j pi u2) on a uniform
/// resolution x resolution grid including both walls (wall values exactly 0).
template <typename Derived>
MatrixXd wavefunction_grid(const Eigen::MatrixBase<Derived>& a, int resolution) {
  if (resolution < 16) throw invalid_parameter("wavefunction_grid: resolution must be >= 16");
  detail::require_normalized(a);
  const MatrixXd s = sine_samples(static_cast<int>(a.rows()), resolution);
  return 2.0 * s * a.derived() * s.transpose();
}

struct EntanglementReport {
  double entropy = 0.0;        // nats
  double witness = 0.0;
  VectorXd schmidt;            // nonincreasing
  VectorXd mode_probs;
  PositionObservables position;
};

template <typename Derived>
EntanglementReport entanglement_report(const Eigen::MatrixBase<Derived>& a, int n_w) {
  EntanglementReport r;
  r.schmidt = schmidt_coefficients(a);
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.schmidt.size(); ++i) {
    const double p = r.schmidt(i) * r.schmidt(i);
    if (p > 0.0) s -= p * std::log(p);
  }
  r.entropy = s;
  r.witness = witness(a, n_w);
  r.mode_probs = mode_probabilities(a);
  r.position = position_observables(a);
  return r;
}

}  // namespace gravwell
