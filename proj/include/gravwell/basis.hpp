#pragma once

#include <gravwell/types.hpp>

#include <cmath>
#include <numbers>

namespace gravwell {

/// <i|u|k> in the unit-well sine basis (levels 1-based):
///   1/2 on the diagonal, -8ik / (pi^2 (i^2-k^2)^2) for i+k odd, else 0.
inline MatrixXd position_matrix(int n) {
  if (n < 1) throw invalid_parameter("position_matrix requires n >= 1");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  MatrixXd u = MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    u(i - 1, i - 1) = 0.5;
    for (int k = i + 1; k <= n; ++k) {
      if ((i + k) % 2 == 0) continue;
      const double d = static_cast<double>(i) * i - static_cast<double>(k) * k;
      const double v = -8.0 * i * k / (pi2 * d * d);
      u(i - 1, k - 1) = v;
      u(k - 1, i - 1) = v;
    }
  }
  return u;
}

/// <i|u^2|k>: 1/3 - 1/(2 pi^2 i^2) on the diagonal and
/// 8ik(-1)^{i+k} / (pi^2 (i^2-k^2)^2) off it (exact integrals, not the square
/// of the truncated u matrix).
inline MatrixXd position_sq_matrix(int n) {
  if (n < 1) throw invalid_parameter("position_sq_matrix requires n >= 1");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  MatrixXd usq = MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    usq(i - 1, i - 1) = 1.0 / 3.0 - 1.0 / (2.0 * pi2 * i * i);
    for (int k = i + 1; k <= n; ++k) {
      const double d = static_cast<double>(i) * i - static_cast<double>(k) * k;
      const double sign = (i + k) % 2 == 0 ? 1.0 : -1.0;
      const double v = sign * 8.0 * i * k / (pi2 * d * d);
      usq(i - 1, k - 1) = v;
      usq(k - 1, i - 1) = v;
    }
  }
  return usq;
}

/// sin(n pi u) sampled on `resolution` uniform points including both walls;
/// the wall rows are exactly zero. Row g, column n-1 holds sin(n pi g/(res-1)).
inline MatrixXd sine_samples(int n, int resolution) {
  if (n < 1 || resolution < 2) throw invalid_parameter("sine_samples: bad arguments");
  MatrixXd s(resolution, n);
  for (int g = 0; g < resolution; ++g) {
    const double u = static_cast<double>(g) / (resolution - 1);
    for (int m = 1; m <= n; ++m) s(g, m - 1) = std::sin(m * std::numbers::pi * u);
  }
  s.row(0).setZero();
  s.row(resolution - 1).setZero();
  return s;
}

}  // namespace gravwell
