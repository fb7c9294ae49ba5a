#include "hermspec/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hermspec/errors.hpp"

namespace hermspec {

namespace {

// Nodes from the symmetric tridiagonal Jacobi matrix, polished by Newton
// iterations on the orthonormal three-term recurrence; weights from the
// Christoffel function, w_i = 1 / sum_k p_k(x_i)^2.
Quadrature1D golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                          double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("golub_welsch: eigensolver failed");

  // Orthonormal values p_0..p_{n-1}, the unnormalized next polynomial and
  // its derivative (same zeros as p_n; Newton only needs the ratio).
  auto recurrence = [&](double x, std::vector<double>& p, double& pn, double& dpn) {
    std::vector<double> dp(n);
    p[0] = 1.0 / std::sqrt(mu0);
    dp[0] = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      const double pm = (k == 0 ? 0.0 : p[k - 1]);
      const double dpm = (k == 0 ? 0.0 : dp[k - 1]);
      const double bk = (k == 0 ? 0.0 : offdiag[k - 1]);
      p[k + 1] = ((x - diag[k]) * p[k] - bk * pm) / offdiag[k];
      dp[k + 1] = (p[k] + (x - diag[k]) * dp[k] - bk * dpm) / offdiag[k];
    }
    const double bk = (n == 1 ? 0.0 : offdiag[n - 2]);
    pn = (x - diag[n - 1]) * p[n - 1] - bk * (n >= 2 ? p[n - 2] : 0.0);
    dpn = p[n - 1] + (x - diag[n - 1]) * dp[n - 1] - bk * (n >= 2 ? dp[n - 2] : 0.0);
  };

  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double pn = 0.0, dpn = 0.0;
    for (int it = 0; it < 4; ++it) {
      recurrence(x, p, pn, dpn);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    recurrence(x, p, pn, dpn);
    double christoffel = 0.0;
    for (int k = 0; k < n; ++k) christoffel += p[k] * p[k];
    q.nodes[i] = x;
    q.weights[i] = 1.0 / christoffel;
  }
  return q;
}

}  // namespace

Quadrature1D gauss_hermite(int n) {
  if (n < 1 || n > 200) throw NumericError("gauss_hermite: n must be in [1,200]");
  std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k / 2.0);
  return golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

Quadrature1D gauss_legendre(int n) {
  if (n < 1) throw NumericError("gauss_legendre: n must be positive");
  std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(diag, off, 2.0);
}

Quadrature1D gauss_legendre(int n, double a, double b) {
  Quadrature1D q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

Quadrature1D half_line_rule(double s, int n, double gauss_scale) {
  if (!(s > -3.0)) throw NumericError("half_line_rule: need s > -3");
  if (!(gauss_scale > 0.0)) throw NumericError("half_line_rule: gauss_scale must be positive");
  if (n < 1 || n > 64) throw NumericError("half_line_rule: n must be in [1,64]");

  // Discretize the measure r^(2+s) exp(-(a r)^2) dr on [0,R] with panels
  // clustered at the origin (the weight is non-polynomial there for
  // fractional s).  R leaves a tail below exp(-225).
  const double R = 15.0 / gauss_scale;
  const int panels = 80, per_panel = 24;
  const Quadrature1D base = gauss_legendre(per_panel);
  std::vector<double> x, w;
  x.reserve(panels * per_panel);
  w.reserve(panels * per_panel);
  for (int p = 0; p < panels; ++p) {
    const double a = R * std::pow(double(p) / panels, 3.0);
    const double b = R * std::pow(double(p + 1) / panels, 3.0);
    for (int i = 0; i < per_panel; ++i) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[i];
      const double ar = gauss_scale * r;
      x.push_back(r);
      w.push_back(0.5 * (b - a) * base.weights[i] * std::pow(r, 2.0 + s) * std::exp(-ar * ar));
    }
  }

  // Stieltjes recurrence on the discrete measure (orthonormal form).
  const std::size_t m = x.size();
  std::vector<double> p_prev(m, 0.0), p_cur(m), p_next(m);
  double mu0 = 0.0;
  for (double wi : w) mu0 += wi;
  for (std::size_t i = 0; i < m; ++i) p_cur[i] = 1.0 / std::sqrt(mu0);

  std::vector<double> alpha(n), sqrt_beta(n > 1 ? n - 1 : 0);
  double prev_sb = 0.0;
  for (int k = 0; k < n; ++k) {
    double a_k = 0.0;
    for (std::size_t i = 0; i < m; ++i) a_k += w[i] * x[i] * p_cur[i] * p_cur[i];
    alpha[k] = a_k;
    if (k + 1 == n) break;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      p_next[i] = (x[i] - a_k) * p_cur[i] - prev_sb * p_prev[i];
      norm2 += w[i] * p_next[i] * p_next[i];
    }
    const double sb = std::sqrt(norm2);
    if (!(sb > 0.0)) throw NumericError("half_line_rule: Stieltjes breakdown");
    for (std::size_t i = 0; i < m; ++i) p_next[i] /= sb;
    sqrt_beta[k] = sb;
    prev_sb = sb;
    std::swap(p_prev, p_cur);
    std::swap(p_cur, p_next);
  }
  return golub_welsch(alpha, sqrt_beta, mu0);
}

SphereRule sphere_rule(int degree) {
  if (degree < 0) throw NumericError("sphere_rule: degree must be nonnegative");
  const int n_t = degree / 2 + 1;          // 2*n_t - 1 >= degree
  int n_phi = degree + 1;                  // trig exactness needs > degree
  if (n_phi % 2) ++n_phi;                  // even count keeps antipodal symmetry
  const Quadrature1D gl = gauss_legendre(n_t);

  SphereRule rule;
  rule.points.reserve(static_cast<std::size_t>(n_t) * n_phi);
  rule.weights.reserve(static_cast<std::size_t>(n_t) * n_phi);
  const double wphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_t; ++i) {
    const double t = gl.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (2.0 * std::numbers::pi * j) / n_phi;
      rule.points.push_back({st * std::cos(phi), st * std::sin(phi), t});
      rule.weights.push_back(gl.weights[i] * wphi);
    }
  }
  return rule;
}

}  // namespace hermspec
