#include <gravwell/quadrature.hpp>

#include <gravwell/parallel.hpp>
#include <gravwell/version.hpp>

#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "J-table cache files are little-endian");

namespace gravwell {

namespace {

std::atomic<std::uint64_t> g_eval_count{0};

// 16-point Gauss-Legendre rule on [-1,1] via Newton iteration on the
// Legendre recurrence; computed once.
struct Gl16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};
  Gl16() {
    constexpr int n = 16;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double dz = -p1 / pp;
        z += dz;
        if (std::abs(dz) < std::numeric_limits<double>::epsilon()) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

const Gl16& gl16() {
  static const Gl16 rule;
  return rule;
}

// Single tensor-product evaluation of J(p,q) at a refinement level.
double tensor_eval(int p, int q, double delta, int level) {
  using detail::make_cos_grid;
  const detail::Grid1D gx = make_cos_grid(std::max(p, 2), delta, level);
  const detail::Grid1D gy = make_cos_grid(std::max(q, 2), delta, level);
  const Eigen::ArrayXd cx = (p * std::numbers::pi * gx.x.array()).cos() * gx.w.array();
  const Eigen::ArrayXd cy = (q * std::numbers::pi * gy.x.array()).cos() * gy.w.array();
  g_eval_count += static_cast<std::uint64_t>(gx.x.size()) * gy.x.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < gx.x.size(); ++i) {
    const double shift = gx.x[i] + delta;
    sum += cx[i] * (cy / (gy.x.array() + shift)).sum();
  }
  return sum;
}

void check_accuracy_arg(double accuracy) {
  if (!(accuracy > 0.0) || accuracy > 1e-6)
    throw invalid_parameter("quadrature accuracy must be in (0, 1e-6]");
}

// Full-table evaluation on one shared grid sized for pmax. Entries come out
// as ordered dot products, so results do not depend on the worker count.
MatrixXd table_eval(double delta, int pmax, int level, int workers) {
  const detail::Grid1D g = detail::make_cos_grid(pmax, delta, level);
  const Eigen::Index n = g.x.size();
  const int np = pmax + 1;

  MatrixXd cosines(np, n);  // cos(p pi x_i)
  for (int p = 0; p < np; ++p)
    cosines.row(p) = (p * std::numbers::pi * g.x.array()).cos();

  // y(i, q) = sum_j w_i w_j cos(q pi x_j) / (x_i + x_j + delta), row-streamed
  // to avoid materialising the N x N kernel.
  MatrixXd y(n, np);
  g_eval_count += static_cast<std::uint64_t>(n) * n;
  parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t i) {
    const Eigen::ArrayXd krow =
        g.w[i] * g.w.array() / (g.x.array() + (g.x[static_cast<Eigen::Index>(i)] + delta));
    y.row(static_cast<Eigen::Index>(i)).noalias() = krow.matrix().transpose() * cosines.transpose();
  });

  MatrixXd t(np, np);
  parallel_for(static_cast<std::size_t>(np), workers, [&](std::size_t p) {
    const auto row = cosines.row(static_cast<int>(p));
    for (int q = static_cast<int>(p); q < np; ++q)
      t(static_cast<int>(p), q) = row.dot(y.col(q));
  });
  return t;
}

}  // namespace

namespace detail {

Grid1D make_cos_grid(int freq, double delta, int level) {
  freq = std::max(freq, 2);
  const double w_uni = std::min(2.0 / freq, 0.25);
  std::vector<double> edges{0.0};
  for (double e = std::min(delta, w_uni) * 0.5; e < w_uni; e *= 2.0) edges.push_back(e);
  const double start = edges.back();
  const int n_uni = static_cast<int>(std::ceil((1.0 - start) / w_uni));
  for (int i = 1; i <= n_uni; ++i)
    edges.push_back(start + i * (1.0 - start) / n_uni);
  edges.back() = 1.0;

  const int sub = 1 << level;
  const auto& rule = gl16();
  const Eigen::Index total = static_cast<Eigen::Index>(edges.size() - 1) * sub * 16;
  Grid1D g;
  g.x.resize(total);
  g.w.resize(total);
  Eigen::Index at = 0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    for (int s = 0; s < sub; ++s) {
      const double a = edges[e] + (edges[e + 1] - edges[e]) * s / sub;
      const double b = edges[e] + (edges[e + 1] - edges[e]) * (s + 1) / sub;
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      for (int k = 0; k < 16; ++k, ++at) {
        g.x[at] = mid + half * rule.x[k];
        g.w[at] = half * rule.w[k];
      }
    }
  }
  return g;
}

}  // namespace detail

double j00_closed_form(double delta) {
  if (!(delta > 0.0)) throw invalid_parameter("delta must be > 0");
  const auto f = [](double s) { return s * std::log(s); };
  return f(2.0 + delta) - 2.0 * f(1.0 + delta) + f(delta);
}

double j_entry(int p, int q, double delta, double accuracy) {
  if (p < 0 || q < 0) throw invalid_parameter("j_entry requires p, q >= 0");
  if (!(delta > 0.0))
    throw invalid_parameter("delta must be > 0: integrand is singular at the origin");
  check_accuracy_arg(accuracy);
  // Entries can sit arbitrarily close to zero, so convergence is judged
  // against the J(0,0) magnitude floor as well as the value itself.
  const double scale = j00_closed_form(delta);
  double prev = tensor_eval(p, q, delta, 0);
  for (int level = 1; level <= 9; ++level) {
    const double cur = tensor_eval(p, q, delta, level);
    if (std::abs(cur - prev) <= accuracy * std::max(std::abs(cur), 1e-3 * scale)) return cur;
    prev = cur;
  }
  throw numeric_error("j_entry: panel refinement did not converge");
}

JTable build_table(double delta, int pmax, double accuracy, int workers) {
  if (pmax < 2) throw invalid_parameter("build_table requires pmax >= 2");
  if (!(delta > 0.0))
    throw invalid_parameter("delta must be > 0: integrand is singular at the origin");
  check_accuracy_arg(accuracy);

  const double scale = j00_closed_form(delta);
  MatrixXd prev = table_eval(delta, pmax, 0, workers);
  for (int level = 1; level <= 6; ++level) {
    MatrixXd cur = table_eval(delta, pmax, level, workers);
    double worst = 0.0;
    for (int p = 0; p <= pmax; ++p)
      for (int q = p; q <= pmax; ++q) {
        const double tol = accuracy * std::max(std::abs(cur(p, q)), 1e-3 * scale);
        worst = std::max(worst, std::abs(cur(p, q) - prev(p, q)) / tol);
      }
    if (worst <= 1.0) {
      JTable t;
      t.delta = delta;
      t.pmax = pmax;
      t.accuracy = accuracy;
      t.version = kJTableFormatVersion;
      t.values = std::move(cur);
      for (int p = 0; p <= pmax; ++p)
        for (int q = 0; q < p; ++q) t.values(p, q) = t.values(q, p);
      return t;
    }
    prev = std::move(cur);
  }
  throw numeric_error("build_table: panel refinement did not converge");
}

double interaction_element(int i, int j, int k, int l, const JTable& t, double gamma) {
  if (i < 1 || j < 1 || k < 1 || l < 1)
    throw invalid_parameter("level indices are 1-based");
  if (i + k > t.pmax || j + l > t.pmax)
    throw std::out_of_range("interaction_element: i+k or j+l exceeds table pmax");
  // grouped so particle exchange (i,j,k,l) -> (j,i,l,k) lands on the same
  // floating-point sum
  return -gamma * ((t.at(std::abs(i - k), std::abs(j - l)) + t.at(i + k, j + l)) -
                   (t.at(i + k, std::abs(j - l)) + t.at(std::abs(i - k), j + l)));
}

void save_table(const JTable& t, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw config_error("cannot open table cache file for writing: " + file.string());
  char header[128];
  std::snprintf(header, sizeof(header), "GWJT %d %.12f %d %.17g\n", t.version, t.delta, t.pmax,
                t.accuracy);
  os << header;
  for (int p = 0; p <= t.pmax; ++p)
    for (int q = p; q <= t.pmax; ++q) {
      const double v = t.values(p, q);
      os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  if (!os) throw config_error("failed writing table cache file: " + file.string());
}

JTable load_table(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw config_error("cannot open table cache file: " + file.string());
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string magic;
  JTable t;
  hs >> magic >> t.version >> t.delta >> t.pmax >> t.accuracy;
  if (!hs || magic != "GWJT" || t.pmax < 2 || !(t.delta > 0.0) || !(t.accuracy > 0.0))
    throw config_error("malformed table cache header in " + file.string());
  t.values.resize(t.pmax + 1, t.pmax + 1);
  for (int p = 0; p <= t.pmax; ++p)
    for (int q = p; q <= t.pmax; ++q) {
      double v = 0.0;
      is.read(reinterpret_cast<char*>(&v), sizeof(v));
      t.values(p, q) = v;
      t.values(q, p) = v;
    }
  if (!is) throw config_error("truncated table cache file: " + file.string());
  is.peek();
  if (!is.eof()) throw config_error("trailing bytes in table cache file: " + file.string());
  return t;
}

std::uint64_t quadrature_eval_count() { return g_eval_count.load(); }
void reset_quadrature_eval_count() { g_eval_count.store(0); }

}  // namespace gravwell
