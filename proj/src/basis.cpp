#include "hermspec/basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hermspec/errors.hpp"

namespace hermspec {

namespace {
const double kNorm0 = std::pow(2.0 * std::numbers::pi, -0.25);  // H_0^1(0) for beta=1

// Shared recurrence: h[k+1] = (beta*v*h[k] - sqrt(k)*h[k-1]) / sqrt(k+1).
inline void hermite_recurrence(int N, double beta, double v, double h0, double* out) {
  out[0] = h0;
  if (N == 0) return;
  const double bv = beta * v;
  out[1] = bv * out[0];
  for (int k = 1; k < N; ++k)
    out[k + 1] = (bv * out[k] - std::sqrt(double(k)) * out[k - 1]) / std::sqrt(double(k + 1));
}
}  // namespace

void eval_basis_1d(int N, double beta, double v, double* out) {
  if (!(beta > 0.0)) throw NumericError("eval_basis_1d: beta must be positive");
  const double h0 = std::sqrt(beta) * kNorm0 * std::exp(-0.5 * beta * beta * v * v);
  hermite_recurrence(N, beta, v, h0, out);
}

void eval_poly_1d(int N, double beta, double v, double* out) {
  if (!(beta > 0.0)) throw NumericError("eval_poly_1d: beta must be positive");
  hermite_recurrence(N, beta, v, std::sqrt(beta) * kNorm0, out);
  if (!std::isfinite(out[N]))
    throw NumericError("eval_poly_1d: overflow at |beta*v| = " + std::to_string(std::abs(beta * v)));
}

std::vector<double> eval_basis_1d(int N, double beta, double v) {
  std::vector<double> out(N + 1);
  eval_basis_1d(N, beta, v, out.data());
  return out;
}

std::vector<double> eval_poly_1d(int N, double beta, double v) {
  std::vector<double> out(N + 1);
  eval_poly_1d(N, beta, v, out.data());
  return out;
}

CoeffVector::CoeffVector(const BasisSpec& s, std::vector<double> d) : spec(s), data(std::move(d)) {
  if (static_cast<std::int64_t>(data.size()) != s.size())
    throw NumericError("CoeffVector: data length does not match term count");
}

double eval_f(const BasisSpec& spec, std::span<const double> coeffs, const std::array<double, 3>& v) {
  const int N = spec.N;
  std::vector<double> t1 = eval_basis_1d(N, spec.beta, v[0] - spec.zeta[0]);
  std::vector<double> t2 = eval_basis_1d(N, spec.beta, v[1] - spec.zeta[1]);
  std::vector<double> t3 = eval_basis_1d(N, spec.beta, v[2] - spec.zeta[2]);
  double sum = 0.0;
  for_each_index(N, [&](std::int64_t r, int k1, int k2, int k3) {
    sum += coeffs[r] * t1[k1] * t2[k2] * t3[k3];
  });
  return sum;
}

double eval_f(const CoeffVector& coeffs, const std::array<double, 3>& v) {
  return eval_f(coeffs.spec, coeffs.data, v);
}

double advection_speed(int N, double beta, double zeta_d) {
  if (!(beta > 0.0)) throw NumericError("advection_speed: beta must be positive");
  if (N == 0) return std::abs(zeta_d);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k < N; ++k) J(k, k + 1) = J(k + 1, k) = std::sqrt(double(k + 1)) / beta;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  const double lam = es.eigenvalues().cwiseAbs().maxCoeff();
  return std::abs(zeta_d) + lam;
}

}  // namespace hermspec
