#include "hermspec/moments.hpp"

#include <cmath>
#include <numbers>

#include "hermspec/errors.hpp"

namespace hermspec {

namespace {

// 1D monomial moments of the weighted basis functions: p[a][k] = integral
// of w^a * basis_k(w) dw, nonzero only for k <= a, a <= 3.  Derived from
// w = (dual-poly combinations): 1, beta*w, (beta^2 w^2 - 1)/sqrt(2), ...
struct MonomialTable {
  // mu[a][k]: integral of v^a basis_k(v - zeta) dv for a,k in 0..3
  double mu[4][4] = {};
};

MonomialTable monomial_table(double beta, double zeta) {
  const double g = std::pow(2.0 * std::numbers::pi, 0.25) / std::sqrt(beta);
  const double b2 = beta * beta, b3 = b2 * beta;
  double p[4][4] = {};
  p[0][0] = g;
  p[1][1] = g / beta;
  p[2][0] = g / b2;
  p[2][2] = std::numbers::sqrt2 * g / b2;
  p[3][1] = 3.0 * g / b3;
  p[3][3] = std::sqrt(6.0) * g / b3;

  MonomialTable t;
  const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int a = 0; a <= 3; ++a)
    for (int k = 0; k <= 3; ++k) {
      double s = 0.0;
      for (int b = 0; b <= a; ++b) s += binom[a][b] * std::pow(zeta, a - b) * p[b][k];
      t.mu[a][k] = s;
    }
  return t;
}

}  // namespace

double raw_moment(const BasisSpec& spec, std::span<const double> coeffs, const MultiIndex& a) {
  if (a.k1 < 0 || a.k2 < 0 || a.k3 < 0 || a.degree() > 3)
    throw NumericError("raw_moment: only |a| <= 3 supported");
  const MonomialTable t1 = monomial_table(spec.beta, spec.zeta[0]);
  const MonomialTable t2 = monomial_table(spec.beta, spec.zeta[1]);
  const MonomialTable t3 = monomial_table(spec.beta, spec.zeta[2]);
  double sum = 0.0;
  for (int k1 = 0; k1 <= std::min(a.k1, spec.N); ++k1)
    for (int k2 = 0; k2 <= std::min(a.k2, spec.N - k1); ++k2)
      for (int k3 = 0; k3 <= std::min(a.k3, spec.N - k1 - k2); ++k3) {
        const double f = coeffs[rank({k1, k2, k3}, spec.N)];
        sum += f * t1.mu[a.k1][k1] * t2.mu[a.k2][k2] * t3.mu[a.k3][k3];
      }
  return sum;
}

double raw_moment(const CoeffVector& coeffs, const MultiIndex& a) {
  return raw_moment(coeffs.spec, coeffs.data, a);
}

MacroState macro_from_coeffs(const BasisSpec& spec, std::span<const double> coeffs) {
  if (spec.N < 2) throw NumericError("macro_from_coeffs: needs N >= 2");
  const double f0 = coeffs[0];
  if (f0 == 0.0) throw NumericError("macro_from_coeffs: degenerate density (f_0 = 0)");
  const double beta = spec.beta;

  MacroState m;
  m.rho = std::pow(2.0 * std::numbers::pi, 0.75) * f0 / std::pow(beta, 1.5);
  const std::int64_t re[3] = {rank({1, 0, 0}, spec.N), rank({0, 1, 0}, spec.N),
                              rank({0, 0, 1}, spec.N)};
  const std::int64_t r2e[3] = {rank({2, 0, 0}, spec.N), rank({0, 2, 0}, spec.N),
                               rank({0, 0, 2}, spec.N)};
  double theta = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double w = coeffs[re[d]] / (beta * f0);  // u_d - zeta_d
    m.u[d] = spec.zeta[d] + w;
    theta += (std::numbers::sqrt2 * coeffs[r2e[d]] / f0 + 1.0) / (beta * beta) - w * w;
  }
  m.theta = theta / 3.0;

  // Second and third raw moments give the stress deviator and heat flux.
  auto rm = [&](int a1, int a2, int a3) { return raw_moment(spec, coeffs, {a1, a2, a3}); };
  double R2[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      int a[3] = {0, 0, 0};
      a[i] += 1;
      a[j] += 1;
      R2[i][j] = R2[j][i] = rm(a[0], a[1], a[2]);
    }
  double tr = 0.0;
  for (int i = 0; i < 3; ++i) tr += R2[i][i] - m.rho * m.u[i] * m.u[i];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m.sigma[i][j] = R2[i][j] - m.rho * m.u[i] * m.u[j] - (i == j ? tr / 3.0 : 0.0);

  for (int i = 0; i < 3; ++i) {
    double qi = 0.0;
    for (int j = 0; j < 3; ++j) {
      int a[3] = {0, 0, 0};
      a[i] += 1;
      a[j] += 2;
      const double R3 = rm(a[0], a[1], a[2]);
      qi += R3 - 2.0 * m.u[j] * R2[i][j] + m.u[j] * m.u[j] * m.rho * m.u[i] - m.u[i] * R2[j][j] +
            2.0 * m.u[i] * m.u[j] * m.rho * m.u[j] - m.u[i] * m.u[j] * m.u[j] * m.rho;
    }
    m.q[i] = 0.5 * qi;
  }
  return m;
}

MacroState macro_from_coeffs(const CoeffVector& coeffs) {
  return macro_from_coeffs(coeffs.spec, coeffs.data);
}

void maxwellian_coeffs(double rho, const std::array<double, 3>& u, double theta,
                       const BasisSpec& spec, std::span<double> out, bool* converged) {
  if (!(rho > 0.0) || !(theta > 0.0))
    throw NumericError("maxwellian_coeffs: rho and theta must be positive");
  const int N = spec.N;
  if (N > 64) throw NumericError("maxwellian_coeffs: N > 64 unsupported");
  const double beta = spec.beta;
  if (converged) *converged = beta * beta * theta < 2.0;

  // 1D factors m[k] = integral of poly_k(w) * Gaussian(mean mu, var theta):
  //   m[k+1] = (beta*mu*m[k] + sqrt(k)(theta*beta^2 - 1) m[k-1]) / sqrt(k+1)
  double m[3][64 + 1];
  const double m0 = std::sqrt(beta) * std::pow(2.0 * std::numbers::pi, -0.25);
  const double tb = theta * beta * beta - 1.0;
  for (int d = 0; d < 3; ++d) {
    const double mu = beta * (u[d] - spec.zeta[d]);
    m[d][0] = m0;
    if (N >= 1) m[d][1] = mu * m0;
    for (int k = 1; k < N; ++k)
      m[d][k + 1] = (mu * m[d][k] + std::sqrt(double(k)) * tb * m[d][k - 1]) / std::sqrt(double(k + 1));
  }
  for_each_index(N, [&](std::int64_t r, int k1, int k2, int k3) {
    out[r] = rho * m[0][k1] * m[1][k2] * m[2][k3];
  });
}

CoeffVector maxwellian_coeffs(double rho, const std::array<double, 3>& u, double theta,
                              const BasisSpec& spec, bool* converged) {
  CoeffVector c(spec);
  maxwellian_coeffs(rho, u, theta, spec, c.data, converged);
  return c;
}

}  // namespace hermspec
