#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace gravwell {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Bad values at the SI boundary or a violated operation precondition.
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mismatched inputs (table vs params), unknown config keys, malformed files.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver non-convergence, integration failure, tolerance breach.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gravwell
