// Test-side numerical oracles, written independently of the library's panel
// machinery: own Gauss nodes, own adaptive subdivision. Used to cross-check
// quadrature and matrix elements.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

// Gauss-Legendre nodes/weights on [-1,1] by bisection + Newton on the
// three-term recurrence (deliberately separate from the library's rule).
inline void gauss_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  auto legendre = [n](double t, double& p, double& dp) {
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    p = p1;
    dp = n * (t * p1 - p0) / (t * t - 1.0);
  };
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 60; ++it) {
      double p, dp;
      legendre(t, p, dp);
      const double dt = -p / dp;
      t += dt;
      if (std::abs(dt) < 1e-16) break;
    }
    double p, dp;
    legendre(t, p, dp);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

struct Rules {
  std::vector<double> x7, w7, x15, w15;
  Rules() {
    gauss_rule(7, x7, w7);
    gauss_rule(15, x15, w15);
  }
};

inline const Rules& rules() {
  static const Rules r;
  return r;
}

template <typename F>
double tensor_gauss(const F& f, double ax, double bx, double ay, double by,
                    const std::vector<double>& x, const std::vector<double>& w) {
  const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      row += w[j] * f(cx + hx * x[i], cy + hy * x[j]);
    sum += w[i] * row;
  }
  return sum * hx * hy;
}

// Adaptive rectangle subdivision with an embedded 7/15-point tensor estimate.
template <typename F>
double integrate2d(const F& f, double ax, double bx, double ay, double by, double abs_tol,
                   int depth = 0) {
  const auto& r = rules();
  const double coarse = tensor_gauss(f, ax, bx, ay, by, r.x7, r.w7);
  const double fine = tensor_gauss(f, ax, bx, ay, by, r.x15, r.w15);
  if (std::abs(fine - coarse) <= abs_tol || depth >= 24) return fine;
  const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
  const double t = abs_tol / 4.0;
  return integrate2d(f, ax, mx, ay, my, t, depth + 1) +
         integrate2d(f, mx, bx, ay, my, t, depth + 1) +
         integrate2d(f, ax, mx, my, by, t, depth + 1) +
         integrate2d(f, mx, bx, my, by, t, depth + 1);
}

template <typename F>
double integrate1d(const F& f, double a, double b, double abs_tol, int depth = 0) {
  const auto& r = rules();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double coarse = 0.0, fine = 0.0;
  for (std::size_t i = 0; i < r.x7.size(); ++i) coarse += r.w7[i] * f(c + h * r.x7[i]);
  for (std::size_t i = 0; i < r.x15.size(); ++i) fine += r.w15[i] * f(c + h * r.x15[i]);
  coarse *= h;
  fine *= h;
  if (std::abs(fine - coarse) <= abs_tol || depth >= 30) return fine;
  return integrate1d(f, a, c, abs_tol / 2.0, depth + 1) +
         integrate1d(f, c, b, abs_tol / 2.0, depth + 1);
}

// Brute-force gravitational matrix element
//   <ij|V|kl> = -gamma int int 4 sin(i pi u1) sin(k pi u1) sin(j pi u2) sin(l pi u2)
//                              / (u1 + u2 + delta) du1 du2
inline double brute_element(int i, int j, int k, int l, double delta, double gamma,
                            double abs_tol = 1e-12) {
  auto f = [=](double u1, double u2) {
    return 4.0 * std::sin(i * M_PI * u1) * std::sin(k * M_PI * u1) * std::sin(j * M_PI * u2) *
           std::sin(l * M_PI * u2) / (u1 + u2 + delta);
  };
  return -gamma * integrate2d(f, 0.0, 1.0, 0.0, 1.0, abs_tol);
}

inline double brute_j(int p, int q, double delta, double abs_tol = 1e-12) {
  auto f = [=](double u1, double u2) {
    return std::cos(p * M_PI * u1) * std::cos(q * M_PI * u2) / (u1 + u2 + delta);
  };
  return integrate2d(f, 0.0, 1.0, 0.0, 1.0, abs_tol);
}

}  // namespace oracle
